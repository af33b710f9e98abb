#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nevan/bounds.hpp"
#include "nevan/diffpoly.hpp"
#include "nevan/funcmodel.hpp"
#include "nevan/quadrature.hpp"
#include "nevan/report.hpp"

namespace nevan {

struct CorpusEntry {
  std::string name;
  std::string family;  // "rational", "exp", "tan"
  FunctionModel model;
};

/// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
double unit_uniform(std::mt19937_64& rng);

/// count random rational functions: numerator degree 0..6, denominator
/// degree 1..6, roots with modulus in [0.3, 6], leading modulus in [0.5, 2].
std::vector<CorpusEntry> random_rationals(std::uint64_t seed, int count = 20);
/// Random rationals, exp(z^n) for n in {2,4,8,16,32,64}, tan(z), tan(z/2+1).
std::vector<CorpusEntry> make_corpus(std::uint64_t seed = 42);

/// f / f(0). Throws NormalizationError when f(0) is 0 or a pole.
FunctionModel normalize_at_origin(const FunctionModel& model);

/// Finite union of arcs [a, b] within [0, 2pi].
struct ArcSet {
  std::vector<std::pair<double, double>> arcs;
  static ArcSet full_circle();
  double measure() const;
  std::string describe() const;
};
ArcSet random_arcs(std::mt19937_64& rng, int count);

struct SuiteParams {
  double rho_factor = 2.0;
  double alpha_b = 0.5;   // Lemma B exponent
  double alpha_c = 0.25;  // Lemma C exponent
  double beta = 0.5;
  double epsilon = 1e-9;
  double gg_constant = kLogDerivConstant;
  /// Minimum distance between sample circles and singular moduli for tan models.
  double tan_gap = 0.3;
  std::uint64_t seed = 42;
  QuadratureConfig quad;
};

/// Radii moved away from poles and zeros of the model, also at factor * r
/// for each factor. Nudges are appended to notes.
std::vector<double> prepare_grid(const FunctionModel& model, std::span<const double> grid,
                                 std::span<const double> factors, const SuiteParams& p,
                                 std::vector<std::string>* notes);

CheckReport check_lemma_b(const FunctionModel& model, const ArcSet& H, double alpha,
                          std::span<const double> r_grid, const SuiteParams& p = {});
/// Requires f(0) = 1.
CheckReport check_gg(const FunctionModel& model, std::span<const double> r_grid, const SuiteParams& p = {});
CheckReport check_theorem_c(const FunctionModel& model, int k, int j, std::span<const double> r_grid,
                            const SuiteParams& p = {});
CheckReport check_lemma_c(const FunctionModel& model, int k, int j, double alpha, double beta,
                          std::span<const double> r_grid, const SuiteParams& p = {});

struct SuiteResult {
  std::vector<CheckReport> reports;
  std::vector<std::string> skipped;  // entries the suite cannot take, with the reason
  size_t violations() const;
  size_t violations_above_onset() const;
};

SuiteResult gg_suite(const std::vector<CorpusEntry>& corpus, std::span<const double> grid, const SuiteParams& p = {});
SuiteResult theorem_c_suite(const std::vector<CorpusEntry>& corpus, std::span<const double> grid,
                            const SuiteParams& p = {});
SuiteResult lemma_c_suite(const std::vector<CorpusEntry>& corpus, std::span<const double> grid,
                          const SuiteParams& p = {});
SuiteResult lemma_b_suite(const std::vector<CorpusEntry>& corpus, std::span<const double> grid,
                          const SuiteParams& p = {});

struct SharpnessRow {
  int n = 0;
  double r = 0.0, rho = 0.0;
  double lhs = 0.0;          // log(n r^(n-1)), analytic m(r, f'/f)
  double lhs_numeric = 0.0;  // by quadrature
  double main_term = 0.0;    // log+(T(rho)/r * rho/(rho-r)) with T(rho) = rho^n/pi
  double main_term_numeric = 0.0;  // with T(rho) by quadrature
  double gap = 0.0;          // lhs - main_term
  double gap_numeric = 0.0;
  double target = 0.0;       // log(pi/e)
  double shortfall = 0.0;    // target - gap
};

/// f = exp(z^n) with rho = n/(n-1) r.
std::vector<SharpnessRow> sharpness_experiment(std::span<const int> n_list, std::span<const double> r_list,
                                               const QuadratureConfig& cfg = {});

/// m(r, tan) against the Clunie certificate for w * w = w' - 1, and
/// m(r, 1/tan) against the Mohon'ko certificate for w' - w^2 - 1.
std::pair<CheckReport, CheckReport> riccati_case(std::span<const double> r_grid, const SuiteParams& p = {},
                                                 CertificateMode mode = CertificateMode::Erratum);

enum class PainleveKind { I, II, IV };

struct PainleveResult {
  PainleveKind which = PainleveKind::I;
  std::string equation;
  ClunieForm form;
  double sigma = 0.0;
  SlopeResult slope;
  double target = 0.0;
  bool match = false;
  SlopeResult legacy_slope;
  double legacy_printed = 0.0;  // slope stated before the correction
  int sum_weights_Q = 0;
  int coefficient_degrees = 0;
};

/// Bindings default to alpha = beta = gamma = 1.
PainleveResult painleve_case(PainleveKind which, RhoStrategy strategy = {}, const ConstantBindings& bindings = {});
std::string to_string(PainleveKind k);

/// Parts of m(r, P(z,f)) over E1 = {|f| < 1} and E2 = {|f| >= 1}.
struct E1E2Parts {
  double e1 = 0.0, e2 = 0.0, total = 0.0, error = 0.0;
};
E1E2Parts e1_e2_decomposition(const FunctionModel& model, const DiffPolynomial& P, double r,
                              const QuadratureConfig& cfg = {});

}  // namespace nevan
