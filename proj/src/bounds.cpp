#include "nevan/bounds.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include "nevan/errors.hpp"
#include "nevan/funcmodel.hpp"
#include "nevan/nevanlinna.hpp"

namespace nevan {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kBoxLo = 1e-6;
constexpr double kBoxHi = 1.0 - 1e-6;

void require_radii(double r, double rho, double T_rho) {
  if (!(r > 0.0)) throw Error(ErrorCode::DomainError, "r must be positive");
  if (!(r < rho)) throw Error(ErrorCode::RadiusOrder, "need r < rho");
  if (!(T_rho >= 0.0)) throw Error(ErrorCode::DomainError, "T(rho) must be nonnegative");
}

void require_orders(int k, int j) {
  if (!(k > j && j >= 0)) throw Error(ErrorCode::OrderError, "need k > j >= 0");
}

double log_factorial(int n) { return std::lgamma(n + 1.0); }

double log_plus(double x) { return x > 1.0 ? std::log(x) : 0.0; }
}  // namespace

double constant_C(double a, double b) {
  if (!(a > 0.0 && a < 1.0 && b > 0.0 && b < 1.0))
    throw Error(ErrorCode::DomainError, "C(a, b) needs 0 < a < 1 and 0 < b < 1");
  const double first = std::pow(2.0 / (1.0 - b), a);
  const double inner = std::pow(2.0, 2.0 + a) * std::pow(1.0 + std::pow(2.0, -1.0 / (1.0 - a)), 1.0 - a);
  const double sec = 1.0 / std::cos(a * kPi / 2.0);
  return first + sec / std::pow(b, a) * (4.0 + inner);
}

double kappa_objective(double alpha, double beta, double epsilon) {
  if (!(epsilon > 0.0)) throw Error(ErrorCode::DomainError, "epsilon must be positive");
  return (std::log(constant_C(alpha, beta) + epsilon) + std::exp(-1.0)) / alpha + epsilon;
}

namespace {
struct KappaParams {
  double epsilon;
};

double simplex_objective(const gsl_vector* x, void* params) {
  const double a = gsl_vector_get(x, 0), b = gsl_vector_get(x, 1);
  if (!(a >= kBoxLo && a <= kBoxHi && b >= kBoxLo && b <= kBoxHi)) return GSL_POSINF;
  return kappa_objective(a, b, static_cast<KappaParams*>(params)->epsilon);
}
}  // namespace

KappaResult optimize_kappa(double epsilon) {
  if (!(epsilon > 0.0)) throw Error(ErrorCode::DomainError, "epsilon must be positive");
  KappaResult res;
  res.epsilon = epsilon;
  res.grid_objective = std::numeric_limits<double>::infinity();
  constexpr int kSteps = 200;  // step 0.005
  for (int i = 1; i < kSteps; ++i) {
    for (int j = 1; j < kSteps; ++j) {
      const double a = i / static_cast<double>(kSteps), b = j / static_cast<double>(kSteps);
      const double v = kappa_objective(a, b, epsilon);
      if (v < res.grid_objective) {
        res.grid_objective = v;
        res.grid_alpha = a;
        res.grid_beta = b;
      }
    }
  }

  KappaParams params{epsilon};
  gsl_multimin_function fn{&simplex_objective, 2, &params};
  std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)> x(gsl_vector_alloc(2), &gsl_vector_free);
  std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)> step(gsl_vector_alloc(2), &gsl_vector_free);
  gsl_vector_set(x.get(), 0, res.grid_alpha);
  gsl_vector_set(x.get(), 1, res.grid_beta);
  gsl_vector_set_all(step.get(), 0.0025);
  std::unique_ptr<gsl_multimin_fminimizer, decltype(&gsl_multimin_fminimizer_free)> s(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 2), &gsl_multimin_fminimizer_free);
  gsl_multimin_fminimizer_set(s.get(), &fn, x.get(), step.get());
  int iter = 0;
  for (; iter < 2000; ++iter) {
    if (gsl_multimin_fminimizer_iterate(s.get()) != GSL_SUCCESS) break;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s.get()), 1e-10) == GSL_SUCCESS) break;
  }
  res.simplex_iterations = iter;
  const double best = s->fval;
  if (best <= res.grid_objective) {
    res.alpha = gsl_vector_get(s->x, 0);
    res.beta = gsl_vector_get(s->x, 1);
    res.objective = best;
  } else {
    res.alpha = res.grid_alpha;
    res.beta = res.grid_beta;
    res.objective = res.grid_objective;
  }
  return res;
}

double main_log_term(double r, double rho, double T_rho) {
  require_radii(r, rho, T_rho);
  return log_plus(T_rho / r * (rho / (rho - r)));
}

double gg_bound(double r, double rho, double T_rho, double constant) {
  return main_log_term(r, rho, T_rho) + constant;
}

double logderiv_bound(int k, int j, double r, double rho, double T_rho) {
  require_orders(k, j);
  const double d = k - j;
  return d * main_log_term(r, rho, T_rho) + (log_factorial(k) - log_factorial(j)) + d * kLogDerivConstant;
}

double log_integral_bound(int k, int j, double alpha, double beta, double epsilon, double r, double rho,
                          double T_rho) {
  require_orders(k, j);
  require_radii(r, rho, T_rho);
  const double a = alpha * (k - j);
  if (!(a > 0.0 && a < 1.0)) throw Error(ErrorCode::DomainError, "need 0 < alpha (k - j) < 1");
  if (!(epsilon > 0.0)) throw Error(ErrorCode::DomainError, "epsilon must be positive");
  const double growth = std::log(T_rho) - std::log(r) + std::log(rho / (rho - r));
  return std::log(constant_C(a, beta) + epsilon) + alpha * (log_factorial(k) - log_factorial(j)) + a * growth;
}

double integral_bound(int k, int j, double alpha, double beta, double epsilon, double r, double rho,
                      double T_rho) {
  require_orders(k, j);
  require_radii(r, rho, T_rho);
  const double a = alpha * (k - j);
  if (!(a > 0.0 && a < 1.0)) throw Error(ErrorCode::DomainError, "need 0 < alpha (k - j) < 1");
  if (!(epsilon > 0.0)) throw Error(ErrorCode::DomainError, "epsilon must be positive");
  const double fact = std::exp(log_factorial(k) - log_factorial(j));
  return (constant_C(a, beta) + epsilon) * std::pow(fact, alpha) *
         std::pow(T_rho / r * (rho / (rho - r)), a);
}

std::string to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::GG: return "gg";
    case CertificateKind::TheoremC: return "theorem-c";
    case CertificateKind::LemmaC: return "lemma-c";
    case CertificateKind::Clunie: return "clunie";
    case CertificateKind::Mohonko: return "mohonko";
  }
  return "unknown";
}

std::string to_string(CertificateMode m) { return m == CertificateMode::Erratum ? "erratum" : "legacy"; }

double sum_items(const std::vector<CertificateItem>& items) {
  double s = 0.0;
  for (const auto& it : items) s += it.value;
  return s;
}

double coefficient_proximity(const RationalFunction& a, double r, CoefficientMode mode,
                             const QuadratureConfig& cfg) {
  if (a.is_zero()) return 0.0;
  if (mode == CoefficientMode::Numeric) return proximity(FunctionModel::rational(a), r, cfg).value;
  return a.degree_at_infinity_plus() * std::log(r) + log_plus(a.leading_ratio());
}

namespace {

struct CoefficientTerms {
  std::vector<CertificateItem> each;
  double max = 0.0;
};

CoefficientTerms coefficient_items(const DiffPolynomial& p, const std::string& prefix, double r,
                                   CoefficientMode mode, bool skip_constant) {
  CoefficientTerms out;
  for (const auto& t : p.terms()) {
    if (skip_constant && t.index.is_constant()) continue;
    const double v = coefficient_proximity(t.coeff, r, mode);
    out.each.push_back({"m(r, " + prefix + ") for " + format_multi_index(t.index), v});
    out.max = std::max(out.max, v);
  }
  return out;
}

double weighted_factorial(const DiffPolynomial& p, bool legacy) {
  const double lf = log_factorial(p.max_order());
  return (legacy ? poly_degree(p) : sum_degrees(p)) * lf;
}

void finish(BoundCertificate& c) { c.total = sum_items(c.items); }

}  // namespace

BoundCertificate clunie_certificate(const ClunieForm& form, double r, double rho, double T_rho,
                                    CoefficientMode coeff_mode, CertificateMode mode) {
  const double L = main_log_term(r, rho, T_rho);
  const bool legacy = mode == CertificateMode::Legacy;
  const DiffPolynomial& P = form.P;
  const DiffPolynomial& Q = form.Q;
  const int W = legacy ? poly_weight(P) + poly_weight(Q) : sum_weights(P) + sum_weights(Q);

  BoundCertificate c;
  c.kind = CertificateKind::Clunie;
  c.mode = mode;
  c.r = r;
  c.rho = rho;
  c.T_rho = T_rho;
  c.main_multiplier = W;
  c.combinatorics = {{"n", form.n},
                     {"sum_w_P", sum_weights(P)},
                     {"sum_w_Q", sum_weights(Q)},
                     {"w_P", poly_weight(P)},
                     {"w_Q", poly_weight(Q)},
                     {"sum_d_P", sum_degrees(P)},
                     {"sum_d_Q", sum_degrees(Q)},
                     {"m", P.max_order()},
                     {"k", Q.max_order()},
                     {"card_I", static_cast<double>(P.card())},
                     {"card_J", static_cast<double>(Q.card())}};

  c.items.push_back({"weight * log+(T(rho)/r * rho/(rho-r))", W * L});
  const auto a = coefficient_items(P, "a", r, coeff_mode, false);
  const auto b = coefficient_items(Q, "b", r, coeff_mode, false);
  if (legacy) {
    c.items.push_back({"max m(r, a)", a.max});
    c.items.push_back({"max m(r, b)", b.max});
  } else {
    c.items.insert(c.items.end(), a.each.begin(), a.each.end());
    c.items.insert(c.items.end(), b.each.begin(), b.each.end());
  }
  c.items.push_back({"degree(P) * log m!", weighted_factorial(P, legacy)});
  c.items.push_back({"degree(Q) * log k!", weighted_factorial(Q, legacy)});
  c.items.push_back({"log+ card(I)", log_plus(static_cast<double>(P.card()))});
  c.items.push_back({"log+ card(J)", log_plus(static_cast<double>(Q.card()))});
  c.items.push_back({"weight * 5.3078", W * kLogDerivConstant});
  finish(c);
  return c;
}

BoundCertificate mohonko_certificate(const DiffPolynomial& P, double r, double rho, double T_rho,
                                     CoefficientMode coeff_mode, CertificateMode mode) {
  const RationalFunction a0 = P.constant_term();
  if (a0.is_zero()) throw Error(ErrorCode::ZeroConstantTerm, "P(z, 0) vanishes identically");
  const double L = main_log_term(r, rho, T_rho);
  const bool legacy = mode == CertificateMode::Legacy;
  const int W = legacy ? poly_weight(P) : sum_weights(P);

  BoundCertificate c;
  c.kind = CertificateKind::Mohonko;
  c.mode = mode;
  c.r = r;
  c.rho = rho;
  c.T_rho = T_rho;
  c.main_multiplier = W;
  c.combinatorics = {{"sum_w_P", sum_weights(P)},
                     {"w_P", poly_weight(P)},
                     {"sum_d_P", sum_degrees(P)},
                     {"d_P", poly_degree(P)},
                     {"m", P.max_order()},
                     {"card_I", static_cast<double>(P.card())}};

  c.items.push_back({"weight * log+(T(rho)/r * rho/(rho-r))", W * L});
  const auto a = coefficient_items(P, "a", r, coeff_mode, true);
  if (legacy)
    c.items.push_back({"max m(r, a)", a.max});
  else
    c.items.insert(c.items.end(), a.each.begin(), a.each.end());
  c.items.push_back({"m(r, 1/a0)", coefficient_proximity(a0.reciprocal(), r, coeff_mode)});
  c.items.push_back({"degree(P) * log m!", weighted_factorial(P, legacy)});
  c.items.push_back({"log+(card(I) - 1)", log_plus(static_cast<double>(P.card()) - 1.0)});
  c.items.push_back({"weight * 5.3078", W * kLogDerivConstant});
  finish(c);
  return c;
}

SlopeResult asymptotic_slope(const ClunieForm& form, double sigma, RhoStrategy strategy, CertificateMode mode) {
  if (!(sigma >= 0.0)) throw Error(ErrorCode::DomainError, "sigma must be nonnegative");
  if (!(strategy.factor() > 1.0)) throw Error(ErrorCode::DomainError, "rho factor must exceed 1");
  const bool legacy = mode == CertificateMode::Legacy;
  SlopeResult s;
  s.sigma = sigma;
  s.strategy = strategy;
  s.main_multiplier = legacy ? poly_weight(form.P) + poly_weight(form.Q)
                             : sum_weights(form.P) + sum_weights(form.Q);
  s.coefficient_degrees = legacy ? coefficient_degree_max(form.P) + coefficient_degree_max(form.Q)
                                 : coefficient_degree_sum(form.P) + coefficient_degree_sum(form.Q);
  s.slope = s.main_multiplier * std::max(0.0, sigma - 1.0) + s.coefficient_degrees;
  return s;
}

SlopeResult asymptotic_slope_mohonko(const DiffPolynomial& P, double sigma, RhoStrategy strategy,
                                     CertificateMode mode) {
  if (!(sigma >= 0.0)) throw Error(ErrorCode::DomainError, "sigma must be nonnegative");
  if (!(strategy.factor() > 1.0)) throw Error(ErrorCode::DomainError, "rho factor must exceed 1");
  const RationalFunction a0 = P.constant_term();
  if (a0.is_zero()) throw Error(ErrorCode::ZeroConstantTerm, "P(z, 0) vanishes identically");
  const bool legacy = mode == CertificateMode::Legacy;
  SlopeResult s;
  s.sigma = sigma;
  s.strategy = strategy;
  s.main_multiplier = legacy ? poly_weight(P) : sum_weights(P);
  int deg = 0;
  for (const auto& t : P.terms()) {
    if (t.index.is_constant()) continue;
    deg = legacy ? std::max(deg, t.coeff.degree_at_infinity_plus()) : deg + t.coeff.degree_at_infinity_plus();
  }
  s.coefficient_degrees = deg + a0.reciprocal().degree_at_infinity_plus();
  s.slope = s.main_multiplier * std::max(0.0, sigma - 1.0) + s.coefficient_degrees;
  return s;
}

RiccatiBounds riccati_bound(const RationalFunction& a, const RationalFunction& b, const RationalFunction& c,
                            double sigma, RiccatiMode mode) {
  if (!(sigma >= 0.0)) throw Error(ErrorCode::DomainError, "sigma must be nonnegative");
  auto di = [](const RationalFunction& x) { return x.is_zero() ? 0 : x.degree_at_infinity_plus(); };
  const double growth = std::max(0.0, sigma - 1.0);
  RiccatiBounds out;
  if (mode == RiccatiMode::MaxAsPrinted) {
    out.proximity = growth + di(a) + std::max(di(b), di(c));
    if (!c.is_zero()) out.reciprocal_proximity = growth + std::max(di(a), di(b)) + di(c.reciprocal());
  } else {
    out.proximity = growth + di(a) + di(b) + di(c);
    if (!c.is_zero()) out.reciprocal_proximity = growth + di(a) + di(b) + di(c.reciprocal());
  }
  return out;
}

}  // namespace nevan
