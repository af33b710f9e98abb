#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nevan {

/// Left and right sides of an inequality sampled over a radius grid.
struct CheckReport {
  std::string name;
  std::vector<double> requested_grid;  // before pole-avoidance nudges
  std::vector<double> grid;
  std::vector<double> lhs;
  std::vector<double> rhs;
  std::vector<double> margins;     // rhs - lhs
  std::vector<double> tolerances;  // per point, 3x accumulated quadrature error
  double min_margin = 0.0;
  std::vector<double> violations;  // radii with margin < -tolerance
  /// First grid radius after which no violation occurs; empty if the last
  /// grid point violates.
  std::optional<double> onset_radius;
  std::optional<double> slope_fit;      // lhs (or d(r)) vs log r
  std::optional<double> rhs_slope_fit;  // rhs vs log r
  double tolerance_used = 0.0;          // largest per-point tolerance
  bool passed = false;
  std::vector<std::string> notes;  // grid nudges, fallbacks

  /// Fills margins, min_margin, violations, onset_radius, tolerance_used
  /// and passed (no violations) from grid/lhs/rhs/tolerances.
  void finalize();
  size_t violations_above_onset() const;
};

/// Least-squares slope of ys against log(rs).
double fit_log_slope(std::span<const double> rs, std::span<const double> ys);

/// n radii from start to stop, log- or linearly spaced.
std::vector<double> make_grid(double start, double stop, int count, bool log_spaced = true);

}  // namespace nevan
