#include <doctest.h>

#include <numbers>
#include <random>

#include "helpers.hpp"
#include "nevan/bounds.hpp"
#include "nevan/diffpoly.hpp"
#include "nevan/model_text.hpp"
#include "nevan/nevanlinna.hpp"

using namespace nevan;
using namespace testing_helpers;
using std::numbers::pi;

TEST_CASE("constant C against reference evaluations") {
  CHECK(rel_close(constant_C(0.5, 0.5), 22.649110640673516, 1e-13));
  CHECK(rel_close(constant_C(0.815508, 0.845890), 52.490544204105909, 1e-13));
  CHECK(constant_C(0.999, 0.5) > constant_C(0.5, 0.5));
}

TEST_CASE("kappa objective") {
  const double v = kappa_objective(0.815508, 0.845890, 1e-9);
  CHECK(rel_close(v, 5.3077498749046859, 1e-13));
  CHECK(v < 5.3078);
  for (double a : {0.3, 0.6, 0.9})
    for (double b : {0.2, 0.7}) {
      const double eps = 1e-3;
      const double direct = (std::log(constant_C(a, b) + eps) + std::exp(-1.0)) / a + eps;
      CHECK(rel_close(kappa_objective(a, b, eps), direct, 1e-14));
    }
}

TEST_CASE("kappa optimizer") {
  const auto res = optimize_kappa();
  CHECK(res.objective <= 5.3078);
  CHECK(std::abs(res.alpha - 0.815508) < 0.02);
  CHECK(std::abs(res.beta - 0.845890) < 0.02);
  CHECK(res.grid_objective >= res.objective);
  CHECK(kappa_objective(0.5, 0.5, 1e-9) > res.objective);
  CHECK(optimize_kappa().objective == res.objective);
}

TEST_CASE("logarithmic derivative bounds") {
  CHECK(gg_bound(10.0, 20.0, 4.0) == kLogDerivConstant);
  CHECK(close(gg_bound(10.0, 20.0, 100.0), std::log(20.0) + 5.3078, 1e-14));
  CHECK(gg_bound(10.0, 20.0, 100.0, kLogDerivConstantLegacy) > gg_bound(10.0, 20.0, 100.0));
  CHECK(logderiv_bound(1, 0, 10.0, 20.0, 100.0) == gg_bound(10.0, 20.0, 100.0));
  CHECK(close(logderiv_bound(2, 0, 10.0, 20.0, 100.0), 2 * std::log(20.0) + std::log(2.0) + 2 * 5.3078, 1e-13));
  CHECK(close(logderiv_bound(3, 1, 10.0, 20.0, 0.1) - logderiv_bound(2, 0, 10.0, 20.0, 0.1), std::log(3.0), 1e-13));
  CHECK(error_code_of([] { gg_bound(10.0, 5.0, 1.0); }) == ErrorCode::RadiusOrder);
  CHECK(error_code_of([] { logderiv_bound(1, 1, 1.0, 2.0, 1.0); }) == ErrorCode::OrderError);
}

TEST_CASE("integral bound") {
  const double a = 0.3, b = 0.5, e = 1e-9, r = 10, rho = 20, T = 100;
  const double ref = (constant_C(a, b) + e) * std::pow(T * rho / (r * (rho - r)), a);
  CHECK(rel_close(integral_bound(1, 0, a, b, e, r, rho, T), ref, 1e-13));
  CHECK(integral_bound(1, 0, 0.999, b, e, r, rho, T) > integral_bound(1, 0, 0.9, b, e, r, rho, T));
  CHECK(error_code_of([] { integral_bound(2, 0, 0.6, 0.5, 1e-9, 10, 20, 100); }) == ErrorCode::DomainError);
}

TEST_CASE("Riccati Clunie certificate itemization") {
  const auto form = validate_clunie_split(1, parse_diffpoly("w"), parse_diffpoly("w' - 1"));
  const double T = 40 / pi;
  const auto c = clunie_certificate(form, 10.0, 20.0, T);
  CHECK(c.main_multiplier == 1.0);
  CHECK(close(c.total, std::log(8 / pi) + std::log(2.0) + 5.3078, 1e-12));
  CHECK(c.total == sum_items(c.items));
  const auto numeric_T = characteristic(FunctionModel::tan_linear(1.0, 0.0), 20.0).value;
  CHECK(std::abs(numeric_T - T) < 0.1 * T);
}

TEST_CASE("first Painleve split certificate") {
  const auto form = validate_clunie_split(1, parse_diffpoly("6*w"), parse_diffpoly("w'' - z"));
  const auto c1 = clunie_certificate(form, 10.0, 20.0, 1e4);
  const auto c2 = clunie_certificate(form, 100.0, 200.0, 1e4);
  CHECK(c1.main_multiplier == 2.0);
  double coeff1 = 0, coeff2 = 0;
  for (const auto& it : c1.items)
    if (it.label.rfind("m(r, b)", 0) == 0) coeff1 += it.value;
  for (const auto& it : c2.items)
    if (it.label.rfind("m(r, b)", 0) == 0) coeff2 += it.value;
  CHECK(close(coeff2 - coeff1, std::log(10.0), 1e-12));
}

TEST_CASE("constant coefficients contribute r-independent terms") {
  const auto P = parse_diffpoly("3*w'' - 5*w^2 - 2");
  const auto a = mohonko_certificate(P, 10.0, 20.0, 100.0);
  const auto b = mohonko_certificate(P, 1000.0, 2000.0, 1e4);
  for (size_t i = 1; i < a.items.size(); ++i) CHECK(a.items[i].value == b.items[i].value);
}

TEST_CASE("Mohonko certificate for the tan equation") {
  const auto c = mohonko_certificate(parse_diffpoly("w' - w^2 - 1"), 10.0, 20.0, 40 / pi);
  CHECK(c.main_multiplier == 1.0);
  CHECK(close(c.total, std::log(8 / pi) + std::log(2.0) + 5.3078, 1e-12));
  CHECK(error_code_of([] { mohonko_certificate(parse_diffpoly("w' - w^2"), 10.0, 20.0, 1.0); }) ==
        ErrorCode::ZeroConstantTerm);
}

TEST_CASE("certificate totals are additive over items") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(1.0, 50.0);
  const auto form = validate_clunie_split(
      2, parse_diffpoly("z*w' + w^2"), parse_diffpoly("w*w'' - (z^2+1)*w'^2 + 4"));
  for (int i = 0; i < 20; ++i) {
    const double r = u(rng);
    const auto c = clunie_certificate(form, r, 2 * r, u(rng) * r);
    double s = 0.0;
    for (const auto& it : c.items) s += it.value;
    CHECK(close(c.total, s, 1e-12 * std::max(1.0, s)));
  }
}

TEST_CASE("erratum totals dominate legacy totals") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> nterms(1, 4), expo(0, 2), order(0, 3), coef(1, 9), n_power(1, 3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const char* coeffs[] = {"1", "z", "(z^2+1)", "(z-2)/(z+3)"};
  auto make = [&](int max_degree) {
    DiffPolynomial p;
    while (p.empty()) {
      const int n = nterms(rng);
      std::string text;
      for (int t = 0; t < n; ++t) {
        std::string term = std::to_string(coef(rng)) + "*" + coeffs[expo(rng) + (coef(rng) > 6)];
        const int factors = std::min(max_degree, expo(rng));
        for (int f = 0; f < factors; ++f) term += "*w^(" + std::to_string(order(rng)) + ")";
        text += (t ? " + " : "") + term;
      }
      p = parse_diffpoly(text);
    }
    return p;
  };
  for (int i = 0; i < 100; ++i) {
    const int n = n_power(rng);
    const auto form = validate_clunie_split(n, make(3), make(n));
    const double r = 1.0 + 99.0 * u(rng);
    const double rho = r * (1.1 + 3.0 * u(rng));
    const double T = std::exp(8.0 * u(rng));
    const auto sum = clunie_certificate(form, r, rho, T, CoefficientMode::ClosedForm, CertificateMode::Erratum);
    const auto max = clunie_certificate(form, r, rho, T, CoefficientMode::ClosedForm, CertificateMode::Legacy);
    CAPTURE(format_diffpoly(form.P));
    CAPTURE(format_diffpoly(form.Q));
    CHECK(sum.total >= max.total);
  }
}

TEST_CASE("Painleve slopes from the Clunie splits") {
  const auto I = validate_clunie_split(1, parse_diffpoly("6*w"), parse_diffpoly("w'' - z"));
  CHECK(asymptotic_slope(I, 2.5).slope == 4.0);
  const ConstantBindings ab{{"alpha", 1.0}};
  const auto II = validate_clunie_split(2, parse_diffpoly("2*w"), parse_diffpoly("w'' - z*w - alpha", ab));
  CHECK(asymptotic_slope(II, 3.0).slope == 5.0);
  const ConstantBindings bg{{"beta", 1.0}, {"gamma", 1.0}};
  const auto IV = validate_clunie_split(
      3, parse_diffpoly("(3/2)*w"), parse_diffpoly("w*w'' - (1/2)*w'^2 - 4*z*w^3 - 2*(z^2 - beta)*w^2 - gamma", bg));
  CHECK(asymptotic_slope(IV, 4.0).slope == 15.0);
}

TEST_CASE("Riccati coefficient bounds") {
  const RationalFunction z = Polynomial::identity();
  const auto flat = riccati_bound(1.0, 1.0, 1.0, 1.0, RiccatiMode::SumErratum);
  CHECK(flat.proximity == 0.0);
  CHECK(flat.reciprocal_proximity.value() == 0.0);
  const auto poly = riccati_bound(z, 0.0, 1.0, 2.0, RiccatiMode::MaxAsPrinted);
  CHECK(poly.proximity == 2.0);
  CHECK(!riccati_bound(z, 1.0, 0.0, 2.0, RiccatiMode::MaxAsPrinted).reciprocal_proximity);
  const RationalFunction inv_c = RationalFunction(z * z).reciprocal();
  CHECK(inv_c.degree_at_infinity_plus() == 0);
}
