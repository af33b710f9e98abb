#pragma once

#include <functional>
#include <span>

namespace nevan {

struct QuadratureConfig {
  int base_panels = 256;
  double tol = 1e-8;
  int max_refinement_depth = 12;
  /// Relative radius gap kept between sample circles and singular moduli;
  /// grid radii closer than 10x this are nudged outward.
  double singularity_guard = 1e-4;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;          // Richardson estimate; unconverged panels count in full
  double unconverged_error = 0.0;
  long evaluations = 0;
};

/// Adaptive Simpson over [a, b]. The panel tree is fixed by the inputs and
/// sums are pairwise along it, so results do not depend on thread timing.
/// The tolerance is relative to max(1, |coarse estimate|).
QuadratureResult integrate(const std::function<double(double)>& g, double a, double b,
                           const QuadratureConfig& cfg = {});

/// (1/2pi) * integral over [0, 2pi] of g(theta).
QuadratureResult circle_mean(const std::function<double(double)>& g, const QuadratureConfig& cfg = {});

/// Throws ToleranceNotMet when refinement ran out of depth with more than
/// sqrt(tol) relative error left, or the result is not finite.
void require_converged(const QuadratureResult& res, const QuadratureConfig& cfg, const char* what);

double pairwise_sum(std::span<const double> xs);

}  // namespace nevan
