#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "nevan/diffpoly.hpp"
#include "nevan/model_text.hpp"

using namespace nevan;
using namespace testing_helpers;

namespace {
std::string dump(const DiffPolynomial& p) { return format_diffpoly(p); }
}

TEST_CASE("parsing merges like terms and records exponents") {
  const auto p1 = parse_diffpoly("6*w^2 + z");
  CHECK(p1.card() == 2);
  const auto t1 = p1.terms();
  CHECK(t1[0].index == MultiIndex({2}));
  CHECK(cclose(t1[0].coeff(0.0), 6.0, 0));
  CHECK(t1[1].index.is_constant());
  CHECK(cclose(t1[1].coeff(2.0), 2.0, 0));

  const auto p2 = parse_diffpoly("w*w'' - (1/2)*w'^2");
  REQUIRE(p2.card() == 2);
  for (const auto& t : p2.terms()) {
    if (t.index == MultiIndex({1, 0, 1})) CHECK(cclose(t.coeff(0.0), 1.0, 0));
    else {
      CHECK(t.index == MultiIndex({0, 2}));
      CHECK(cclose(t.coeff(0.0), -0.5, 0));
    }
  }

  const auto p3 = parse_diffpoly("w' + w' ");
  REQUIRE(p3.card() == 1);
  CHECK(p3.terms()[0].index == MultiIndex({0, 1}));
  CHECK(cclose(p3.terms()[0].coeff(0.0), 2.0, 0));
}

TEST_CASE("degree and weight of a multi-index") {
  CHECK(MultiIndex({1, 0, 1}).degree() == 2);
  CHECK(MultiIndex({1, 0, 1}).weight() == 2);
  CHECK(MultiIndex({0, 2}).degree() == 2);
  CHECK(MultiIndex({0, 2}).weight() == 2);
  CHECK(MultiIndex({3}).degree() == 3);
  CHECK(MultiIndex({3}).weight() == 0);
  CHECK(MultiIndex({0, 0, 0}).is_constant());
}

TEST_CASE("combinatorics of the fourth Painleve right side") {
  const ConstantBindings b{{"beta", 1.0}, {"gamma", 1.0}};
  const auto Q = parse_diffpoly("w*w'' - (1/2)*w'^2 - 4*z*w^3 - 2*(z^2 - beta)*w^2 - gamma", b);
  CHECK(Q.card() == 5);
  CHECK(sum_weights(Q) == 4);
  CHECK(coefficient_degree_sum(Q) == 3);

  const auto R = parse_diffpoly("w' - 1");
  CHECK(sum_weights(R) == 1);
  CHECK(sum_degrees(R) == 1);
  CHECK(R.card() == 2);

  const auto single = parse_diffpoly("3*w*w'^2");
  CHECK(poly_degree(single) == sum_degrees(single));
  CHECK(poly_weight(single) == sum_weights(single));

  CHECK(error_code_of([] { sum_weights(DiffPolynomial{}); }) == ErrorCode::EmptyPolynomial);
}

TEST_CASE("cancellation reports a zero term") {
  const auto parsed = parse_diffpoly_ex("w^2 + w' - w^2");
  CHECK(parsed.poly.card() == 1);
  REQUIRE(parsed.warnings.size() == 1);
  CHECK(parsed.warnings[0].find("ZeroTerm") != std::string::npos);
}

TEST_CASE("parse errors") {
  CHECK(error_code_of([] { parse_diffpoly("w'' + alpha"); }) == ErrorCode::SyntaxError);
  CHECK(error_code_of([] { parse_diffpoly("w^"); }) == ErrorCode::SyntaxError);
  CHECK(error_code_of([] { parse_diffpoly("1/w"); }) == ErrorCode::SyntaxError);
}

TEST_CASE("Clunie split validation") {
  const auto ok = validate_clunie_split(1, parse_diffpoly("6*w"), parse_diffpoly("w'' - z"));
  CHECK(ok.n == 1);
  validate_clunie_split(1, parse_diffpoly("w"), parse_diffpoly("w' - 1"));
  CHECK(error_code_of([] { validate_clunie_split(3, parse_diffpoly("w"), parse_diffpoly("w^4 + w")); }) ==
        ErrorCode::DegreeViolation);
  CHECK(error_code_of([] { validate_clunie_split(0, parse_diffpoly("w"), parse_diffpoly("w")); }) ==
        ErrorCode::DomainError);
}

TEST_CASE("evaluation on models") {
  const auto tan = FunctionModel::tan_linear(1.0, 0.0);
  const auto riccati = parse_diffpoly("w' - w^2 - 1");
  for (cplx z : {cplx(0.3, 0.1), cplx(-2.0, 1.5), cplx(1.0, -3.0)}) {
    const cplx w = eval(tan, z);
    CHECK(std::abs(evaluate_diffpoly(riccati, tan, z)) <= 1e-8 * std::max(1.0, std::norm(w)));
  }
  const auto m = parse_model("(z^2+1)/(z-3)*exp(z)");
  const cplx z(0.7, 0.2);
  CHECK(cclose(evaluate_diffpoly(parse_diffpoly("w"), m, z), eval(m, z), 1e-15));
  const cplx direct = eval_derivative(m, z, 2) - 6.0 * std::pow(eval(m, z), 2) - z;
  CHECK(cclose(evaluate_diffpoly(parse_diffpoly("w'' - 6*w^2 - z"), m, z), direct, 1e-13));
}

TEST_CASE("evaluation is linear in the polynomial") {
  const auto m = parse_model("tan(z/2+1)");
  const auto P = parse_diffpoly("w*w'' - 3*w'^2 + z");
  const auto Q = parse_diffpoly("z^2*w^3 + w' - 7");
  const RationalFunction c = parse_rational("(z+2)/(z-5)");
  for (cplx z : {cplx(0.3, 0.1), cplx(-0.4, 1.2)}) {
    const cplx lhs = evaluate_diffpoly(P + Q.scaled(c), m, z);
    const cplx rhs = evaluate_diffpoly(P, m, z) + c(z) * evaluate_diffpoly(Q, m, z);
    CHECK(cclose(lhs, rhs, 1e-12));
    CHECK(cclose(evaluate_diffpoly(P * Q, m, z), evaluate_diffpoly(P, m, z) * evaluate_diffpoly(Q, m, z), 1e-12));
  }
}

TEST_CASE("format and parse round trip over generated polynomials") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> nterms(1, 5), expo(0, 3), order(0, 4), coef(-9, 9);
  const char* coeffs[] = {"z", "(z^2+1)", "i", "(z-2)/(z+3)", "pi"};
  for (int i = 0; i < 100; ++i) {
    std::string text;
    const int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
      std::string term = std::to_string(coef(rng));
      if (coef(rng) > 4) term += std::string("*") + coeffs[expo(rng)];
      const int factors = expo(rng);
      for (int f = 0; f < factors; ++f) {
        const int k = order(rng);
        term += "*w";
        if (k > 0) term += "^(" + std::to_string(k) + ")";
        if (coef(rng) > 5) term += "^2";
      }
      text += (t ? " + " : "") + term;
    }
    CAPTURE(text);
    const auto p = parse_diffpoly(text);
    const std::string printed = dump(p);
    if (p.empty()) continue;
    const auto q = parse_diffpoly(printed);
    CHECK(dump(q) == printed);
    CHECK(q.card() == p.card());
    CHECK(sum_weights(q) == sum_weights(p));
    const auto m = parse_model("(z+1)*exp(z^2-z)");
    CHECK(cclose(evaluate_diffpoly(q, m, cplx(0.2, 0.3)), evaluate_diffpoly(p, m, cplx(0.2, 0.3)), 1e-10));
  }
}
