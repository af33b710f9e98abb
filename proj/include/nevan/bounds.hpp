#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nevan/diffpoly.hpp"
#include "nevan/polynomial.hpp"
#include "nevan/quadrature.hpp"

namespace nevan {

inline constexpr double kLogDerivConstant = 5.3078;
inline constexpr double kLogDerivConstantLegacy = 5.8501;

/// C(a, b) for 0 < a, b < 1, using 2^(2+a) (1 + 2^(-1/(1-a)))^(1-a) for the
/// inner power so that it stays finite as a approaches 1.
double constant_C(double a, double b);

/// (log(C(alpha, beta) + eps) + 1/e) / alpha + eps
double kappa_objective(double alpha, double beta, double epsilon);

struct KappaResult {
  double alpha = 0.0, beta = 0.0, epsilon = 0.0, objective = 0.0;
  double grid_alpha = 0.0, grid_beta = 0.0, grid_objective = 0.0;
  int simplex_iterations = 0;
};

/// Grid scan with step 0.005 over (0,1)^2, then Nelder-Mead refinement
/// (GSL nmsimplex2) on the box clamped to [1e-6, 1 - 1e-6]^2.
KappaResult optimize_kappa(double epsilon = 1e-9);

/// log+((T / r) * rho / (rho - r))
double main_log_term(double r, double rho, double T_rho);

double gg_bound(double r, double rho, double T_rho, double constant = kLogDerivConstant);
double logderiv_bound(int k, int j, double r, double rho, double T_rho);
double integral_bound(int k, int j, double alpha, double beta, double epsilon, double r, double rho,
                      double T_rho);
/// log of integral_bound, finite where the plain value would overflow.
double log_integral_bound(int k, int j, double alpha, double beta, double epsilon, double r, double rho,
                          double T_rho);

enum class CertificateKind { GG, TheoremC, LemmaC, Clunie, Mohonko };
/// Erratum: per-term sums. Legacy: the earlier max-forms.
enum class CertificateMode { Erratum, Legacy };
enum class CoefficientMode { ClosedForm, Numeric };

std::string to_string(CertificateKind k);
std::string to_string(CertificateMode m);

struct CertificateItem {
  std::string label;
  double value = 0.0;
};

struct BoundCertificate {
  CertificateKind kind = CertificateKind::Clunie;
  CertificateMode mode = CertificateMode::Erratum;
  double r = 0.0, rho = 0.0, T_rho = 0.0;
  std::optional<double> sigma;
  double main_multiplier = 0.0;
  std::vector<std::pair<std::string, double>> combinatorics;
  std::vector<CertificateItem> items;
  double total = 0.0;  // items summed in order
};

/// Sum of item values in order; the same arithmetic that fills total.
double sum_items(const std::vector<CertificateItem>& items);

/// m(r, a) for rational a: di+(a) log r + log+|lead ratio| in closed form,
/// or by quadrature.
double coefficient_proximity(const RationalFunction& a, double r, CoefficientMode mode,
                             const QuadratureConfig& cfg = {});

BoundCertificate clunie_certificate(const ClunieForm& form, double r, double rho, double T_rho,
                                    CoefficientMode coeff_mode = CoefficientMode::ClosedForm,
                                    CertificateMode mode = CertificateMode::Erratum);
/// Throws ZeroConstantTerm when P(z, 0) vanishes identically.
BoundCertificate mohonko_certificate(const DiffPolynomial& P, double r, double rho, double T_rho,
                                     CoefficientMode coeff_mode = CoefficientMode::ClosedForm,
                                     CertificateMode mode = CertificateMode::Erratum);

/// rho = factor * r. The sharpness choice n/(n-1) is also a fixed factor.
struct RhoStrategy {
  enum Kind { FixedFactor, SharpnessFactor } kind = FixedFactor;
  double c = 2.0;  // factor, or n for SharpnessFactor
  double factor() const { return kind == FixedFactor ? c : c / (c - 1.0); }
};

struct SlopeResult {
  double slope = 0.0;
  double sigma = 0.0;
  RhoStrategy strategy;
  int main_multiplier = 0;
  int coefficient_degrees = 0;
};

/// Coefficient of log r in the certificate when T(rho) = rho^sigma and
/// rho = c r: multiplier * (sigma - 1)+ plus the coefficient degrees.
SlopeResult asymptotic_slope(const ClunieForm& form, double sigma, RhoStrategy strategy = {},
                             CertificateMode mode = CertificateMode::Erratum);
SlopeResult asymptotic_slope_mohonko(const DiffPolynomial& P, double sigma, RhoStrategy strategy = {},
                                     CertificateMode mode = CertificateMode::Erratum);

enum class RiccatiMode { MaxAsPrinted, SumErratum };

/// Bounds on limsup m(r,f)/log r and limsup m(r,1/(f-q))/log r for
/// solutions of w' = a w^2 + b w + c. The second is absent when c = 0.
struct RiccatiBounds {
  double proximity = 0.0;
  std::optional<double> reciprocal_proximity;
};
RiccatiBounds riccati_bound(const RationalFunction& a, const RationalFunction& b, const RationalFunction& c,
                            double sigma, RiccatiMode mode);

}  // namespace nevan
