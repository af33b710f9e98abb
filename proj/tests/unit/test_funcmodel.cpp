#include <doctest.h>

#include <algorithm>
#include <numbers>
#include <random>

#include "helpers.hpp"
#include "nevan/funcmodel.hpp"
#include "nevan/model_text.hpp"

using namespace nevan;
using namespace testing_helpers;
using std::numbers::pi;

namespace {
const Polynomial Z = Polynomial::identity();

std::vector<double> sorted_moduli(const std::vector<PoleRecord>& pts) {
  std::vector<double> out;
  for (const auto& p : pts) out.push_back(std::abs(p.location));
  std::sort(out.begin(), out.end());
  return out;
}
}  // namespace

TEST_CASE("evaluation of basic models") {
  CHECK(cclose(eval(FunctionModel::rational(Z), 2.0), 2.0, 1e-15));
  CHECK(cclose(eval(FunctionModel::tan_linear(1.0, 0.0), pi / 4), 1.0, 1e-15));
  // exp((1+i)^3) from a 20-digit reference evaluation
  const cplx ref(-0.05631934999212788100, 0.12306002480577673581);
  CHECK(cclose(eval(FunctionModel::exp_power(3), cplx(1, 1)), ref, 1e-14));
}

TEST_CASE("log_abs identities") {
  const auto e5 = FunctionModel::exp_power(5);
  for (double th : {0.0, 0.3, 1.1, 2.5, 4.0}) {
    const double r = 3.0;
    CHECK(rel_close(log_abs(e5, std::polar(r, th)), std::pow(r, 5) * std::cos(5 * th), 1e-12));
  }
  CHECK(close(log_abs(FunctionModel::rational(Z), 7.0), std::log(7.0), 1e-15));
  const auto m = parse_model("(z^2+1)/(z-3)*exp(z)");
  const cplx z(0.4, 1.7);
  CHECK(close(log_abs(FunctionModel::reciprocal(m), z), -log_abs(m, z), 1e-13));
}

TEST_CASE("log_abs stays finite where exp(z^n) overflows") {
  const auto e64 = FunctionModel::exp_power(64);
  const double v = log_abs(e64, 100.0);
  CHECK(std::isfinite(v));
  CHECK(rel_close(v, 1e128, 1e-12));
}

TEST_CASE("derivatives") {
  const auto e4 = FunctionModel::exp_power(4);
  const cplx z(0.6, -0.3);
  CHECK(cclose(eval_derivative(e4, z, 1), 4.0 * std::pow(z, 3) * std::exp(std::pow(z, 4)), 1e-13));
  CHECK(cclose(eval_derivative(FunctionModel::tan_linear(1.0, 0.0), 0.0, 1), 1.0, 1e-15));
  const auto inv = FunctionModel::rational(RationalFunction(1.0, Z - 2.0));
  CHECK(cclose(eval_derivative(inv, 0.0, 3), -6.0 / 16.0, 1e-14));
}

TEST_CASE("derivatives agree with central finite differences") {
  const char* models[] = {"tan(z/2+1)", "(z^2+1)/(z-3)", "(z+1)*exp(z^2-z)", "1/tan(z)", "2*exp(z)"};
  const cplx z0(0.37, 0.61);
  for (const char* text : models) {
    const auto m = parse_model(text);
    for (int k = 1; k <= 3; ++k) {
      const double h = 1e-3;
      const cplx fd = (eval_derivative(m, z0 + h, k - 1) - eval_derivative(m, z0 - h, k - 1)) / (2 * h);
      CAPTURE(text);
      CAPTURE(k);
      CHECK(cclose(eval_derivative(m, z0, k), fd, 1e-5));
    }
  }
}

TEST_CASE("tan satisfies w' = w^2 + 1") {
  const auto t = FunctionModel::tan_linear(1.0, 0.0);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (int i = 0; i < 50; ++i) {
    const cplx z(u(rng), u(rng));
    if (std::abs(std::cos(z)) < 1e-3) continue;
    const cplx w = eval(t, z);
    CHECK(cclose(eval_derivative(t, z, 1), w * w + 1.0, 1e-10));
  }
}

TEST_CASE("reciprocal of reciprocal evaluates like the original") {
  const auto m = parse_model("(z^2+1)/(z-3)*exp(z)");
  const auto rr = FunctionModel::reciprocal(FunctionModel::reciprocal(m));
  for (cplx z : {cplx(0.5, 0.5), cplx(-1.2, 2.0), cplx(4.0, -0.1)}) CHECK(cclose(eval(rr, z), eval(m, z), 1e-13));
}

TEST_CASE("poles and zeros in a disc") {
  const auto t = FunctionModel::tan_linear(1.0, 0.0);
  const auto poles = poles_in_disc(t, 5.0);
  REQUIRE(poles.size() == 4);
  for (const auto& p : poles) CHECK(p.multiplicity == 1);
  const auto pm = sorted_moduli(poles);
  CHECK(close(pm[0], pi / 2, 1e-12));
  CHECK(close(pm[3], 3 * pi / 2, 1e-12));

  CHECK(poles_in_disc(FunctionModel::exp_power(3), 100.0).empty());

  const auto f = parse_model("1/((z-1)^2*(z+3))");
  const auto fp = poles_in_disc(f, 2.0);
  REQUIRE(fp.size() == 1);
  CHECK(fp[0].multiplicity == 2);
  CHECK(cclose(fp[0].location, 1.0, 1e-6));

  const auto z2 = zeros_in_disc(FunctionModel::rational(Z * Z), 0.0, 2.0);
  REQUIRE(z2.size() == 1);
  CHECK(z2[0].multiplicity == 2);

  const auto tz = sorted_moduli(zeros_in_disc(t, 0.0, 5.0));
  REQUIRE(tz.size() == 3);
  CHECK(close(tz[0], 0.0, 1e-12));
  CHECK(close(tz[2], pi, 1e-12));

  // (z^2+1)/(z-3) = 1  <=>  z^2 - z + 4 = 0
  const auto q = zeros_in_disc(parse_model("(z^2+1)/(z-3)"), 1.0, 10.0);
  REQUIRE(q.size() == 2);
  for (const auto& p : q) CHECK(std::abs(p.location * p.location - p.location + 4.0) < 1e-10);
}

TEST_CASE("evaluating at a pole raises PoleProximity") {
  const auto t = FunctionModel::tan_linear(1.0, 0.0);
  CHECK(error_code_of([&] { eval(t, pi / 2); }) == ErrorCode::PoleProximity);
  const auto f = parse_model("1/(z-1)");
  CHECK(error_code_of([&] { eval(f, 1.0); }) == ErrorCode::PoleProximity);
}

TEST_CASE("derivative order above the supported maximum") {
  CHECK(error_code_of([] { eval_derivative(FunctionModel::exp_power(2), 0.5, 9); }) == ErrorCode::OrderTooLarge);
}

TEST_CASE("model text round trip over generated models") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coef(-5, 5), pick(0, 4), deg(0, 3);
  auto poly_text = [&] {
    std::string s;
    const int d = deg(rng);
    for (int i = d; i >= 0; --i) {
      int c = coef(rng);
      if (i == d && c == 0) c = 1;
      s += (s.empty() ? "" : "+") + std::string("(") + std::to_string(c) + ")" + (i ? "*z^" + std::to_string(i) : "");
    }
    return s;
  };
  for (int i = 0; i < 100; ++i) {
    std::string text;
    switch (pick(rng)) {
      case 0: text = "(" + poly_text() + ")/(" + poly_text() + "+z^4)"; break;
      case 1: text = "(" + poly_text() + ")*exp(" + poly_text() + "+z^2)"; break;
      case 2: text = "tan(" + std::to_string(1 + coef(rng) * coef(rng)) + "*z+1)"; break;
      case 3: text = "1/(exp(z^3)-" + std::to_string(2 + pick(rng)) + ")"; break;
      default: text = std::to_string(3 + pick(rng)) + "*tan(z)"; break;
    }
    CAPTURE(text);
    FunctionModel m = FunctionModel::rational(1.0);
    try {
      m = parse_model(text);
    } catch (const Error& e) {
      continue;  // e.g. tan(0*z+1) is rejected as a constant
    }
    const std::string printed = to_text(m);
    CHECK(to_text(parse_model(printed)) == printed);
    const cplx z(0.23, 0.41);
    CHECK(cclose(eval(parse_model(printed), z), eval(m, z), 1e-12));
  }
}

TEST_CASE("malformed model text") {
  CHECK(error_code_of([] { parse_model("exp(z"); }) == ErrorCode::SyntaxError);
  CHECK(error_code_of([] { parse_model("sin(z)"); }) == ErrorCode::SyntaxError);
}
