#include <doctest.h>

#include <numbers>

#include "helpers.hpp"
#include "nevan/model_text.hpp"
#include "nevan/nevanlinna.hpp"
#include "nevan/report.hpp"

using namespace nevan;
using namespace testing_helpers;
using std::numbers::pi;

namespace {
const Polynomial Z = Polynomial::identity();
}

TEST_CASE("proximity of z^k is k log r") {
  for (int k : {1, 2, 3})
    for (double r : {2.0, 10.0, 100.0})
      CHECK(close(proximity(FunctionModel::rational(Z.pow(k)), r).value, k * std::log(r), 1e-9));
}

TEST_CASE("proximity and characteristic of exp(z^n) are r^n / pi") {
  for (int n : {1, 2, 3, 5})
    for (double r : {2.0, 5.0}) {
      const auto m = FunctionModel::exp_power(n);
      const double ref = std::pow(r, n) / pi;
      CHECK(rel_close(proximity(m, r).value, ref, 1e-9));
      CHECK(rel_close(characteristic(m, r).value, ref, 1e-9));
      CHECK(counting(m, r).value == 0.0);
    }
}

TEST_CASE("vanishing proximities") {
  CHECK(close(proximity(FunctionModel::rational(RationalFunction(1.0, Z)), 10.0).value, 0.0, 1e-12));
  CHECK(close(proximity_at(FunctionModel::rational(Z), 0.0, 10.0).value, 0.0, 1e-12));
  CHECK(close(proximity_at(FunctionModel::rational(Z * cplx(2.0)), 0.0, 10.0).value, 0.0, 1e-12));
}

TEST_CASE("proximity_at zero of tan equals proximity of cot") {
  const auto t = FunctionModel::tan_linear(1.0, 0.0);
  for (double r : {1.0, 2.5, 7.3})
    CHECK(close(proximity_at(t, 0.0, r).value, proximity(FunctionModel::reciprocal(t), r).value, 1e-8));
}

TEST_CASE("counting functions") {
  CHECK(close(counting(FunctionModel::rational(RationalFunction(1.0, Z)), std::exp(1.0)).value, 1.0, 1e-14));
  CHECK(close(counting(FunctionModel::tan_linear(1.0, 0.0), 2.0).value, 2 * std::log(4 / pi), 1e-13));
}

TEST_CASE("counting function is nondecreasing in r") {
  for (const char* text : {"tan(z)", "tan(z/2+1)", "(z^3+2)/((z-1)^2*(z+4))", "1/(tan(z)-2)"}) {
    const auto m = parse_model(text);
    double prev = -1.0;
    for (double r = 0.5; r < 12.0; r += 0.37) {
      const double v = counting(m, r).value;
      CAPTURE(text);
      CHECK(v >= prev - 1e-12);
      prev = v;
    }
  }
}

TEST_CASE("argument principle: N(r, 0) - N(r, inf) matches the circle mean of log|f|") {
  // Jensen: mean of log|f| over |z| = r equals log|f(0)| + N(r,0) - N(r,inf)
  const auto m = parse_model("(z^2 + 3*z + 5)/((z-1)*(z+2)^2)");
  for (double r : {0.5, 1.5, 2.5, 4.0}) {
    const double mean = proximity(m, r).value - proximity_at(m, 0.0, r).value;
    const double jensen = std::log(std::abs(eval(m, 0.0))) + counting_at(m, 0.0, r).value - counting(m, r).value;
    CHECK(close(mean, jensen, 1e-7));
  }
}

TEST_CASE("characteristic of tan grows like 2r/pi") {
  const double T = characteristic(FunctionModel::tan_linear(1.0, 0.0), 50.0).value;
  CHECK(std::abs(T / 50.0 - 2 / pi) < 0.05 * 2 / pi);
}

TEST_CASE("proximity of a derivative ratio") {
  // exp(z): f'/f = 1
  CHECK(close(proximity_derivative_ratio(FunctionModel::exp_power(1), 1, 0, 10.0).value, 0.0, 1e-12));
  CHECK(close(proximity_derivative_ratio(FunctionModel::exp_power(1), 2, 1, 10.0).value, 0.0, 1e-12));
  // exp(z^8): f'/f = 8 z^7
  CHECK(close(proximity_derivative_ratio(FunctionModel::exp_power(8), 1, 0, 100.0).value, std::log(8e14), 1e-8));
  CHECK(error_code_of([] { proximity_derivative_ratio(FunctionModel::exp_power(1), 1, 1, 2.0); }) ==
        ErrorCode::OrderError);
}

TEST_CASE("first main theorem boundedness") {
  const auto grid = make_grid(2.0, 200.0, 20);
  const auto lin = first_main_check(FunctionModel::rational(Z), 1.0, grid);
  CHECK(lin.passed);
  for (size_t i = 0; i < lin.grid.size(); ++i) CHECK(std::abs(lin.lhs[i] - lin.rhs[i]) <= std::log(2.0) + 1e-8);

  const auto e = first_main_check(FunctionModel::exp_power(1), 0.0, make_grid(2.0, 50.0, 10));
  for (size_t i = 0; i < e.grid.size(); ++i) CHECK(rel_close(e.lhs[i], e.rhs[i], 1e-9));

  const auto t = first_main_check(FunctionModel::tan_linear(1.0, 0.0), 0.0, make_grid(5.0, 50.0, 12));
  CHECK(t.passed);
  CHECK(std::abs(*t.slope_fit) <= 0.05);
}

TEST_CASE("growth order estimates") {
  const auto grid = make_grid(5.0, 500.0, 40);
  CHECK(close(growth_order_estimate(FunctionModel::exp_power(3), grid), 3.0, 0.01));
  CHECK(close(growth_order_estimate(parse_model("(z^2+1)/(z-3)"), grid), 0.0, 0.01));
  CHECK(close(growth_order_estimate(FunctionModel::tan_linear(1.0, 0.0), grid), 1.0, 0.02));
  const double few[] = {5.0, 6.0};
  CHECK(error_code_of([&] { growth_order_estimate(FunctionModel::exp_power(1), few); }) == ErrorCode::GridTooSmall);
}

TEST_CASE("table rows avoid singular radii") {
  const auto rows = nevanlinna_table(FunctionModel::tan_linear(1.0, 0.0), make_grid(1.0, 10.0, 8));
  REQUIRE(rows.size() == 8);
  for (const auto& row : rows) {
    CHECK(close(row.T, row.m + row.N, 1e-12));
    CHECK(row.quad_error >= 0.0);
  }
}

TEST_CASE("pole on the circle raises BoundaryPole") {
  CHECK(error_code_of([] { proximity(parse_model("1/(z-2)"), 2.0); }) == ErrorCode::BoundaryPole);
}
