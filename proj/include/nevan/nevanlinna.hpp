#pragma once

#include <span>
#include <vector>

#include "nevan/funcmodel.hpp"
#include "nevan/quadrature.hpp"
#include "nevan/report.hpp"

namespace nevan {

enum class NevanlinnaKind { Proximity, Counting, Characteristic };

struct NevanlinnaValue {
  double r = 0.0;
  double value = 0.0;
  double quadrature_error = 0.0;  // zero for counting functions
  NevanlinnaKind kind = NevanlinnaKind::Proximity;
};

/// m(r, f): mean of log+|f| over |z| = r.
NevanlinnaValue proximity(const FunctionModel& model, double r, const QuadratureConfig& cfg = {});
/// m(r, 1/(f - a)).
NevanlinnaValue proximity_at(const FunctionModel& model, cplx a, double r, const QuadratureConfig& cfg = {});
/// N(r, f) from the exact pole inventory, including the origin term.
NevanlinnaValue counting(const FunctionModel& model, double r);
/// N(r, 1/(f - a)).
NevanlinnaValue counting_at(const FunctionModel& model, cplx a, double r);
/// T(r, f) = m(r, f) + N(r, f).
NevanlinnaValue characteristic(const FunctionModel& model, double r, const QuadratureConfig& cfg = {});
/// T(r, 1/(f - a)).
NevanlinnaValue characteristic_at(const FunctionModel& model, cplx a, double r, const QuadratureConfig& cfg = {});

/// m(r, f^(k)/f^(j)) through the scaled derivative quotient.
NevanlinnaValue proximity_derivative_ratio(const FunctionModel& model, int k, int j, double r,
                                           const QuadratureConfig& cfg = {});

/// Sample-circle resolution for a model: tan lattices and exp(z^n)
/// oscillations need more base panels as r or n grows.
QuadratureConfig circle_config(const FunctionModel& model, double r, const QuadratureConfig& cfg);

/// Moduli of poles and of zeros of f (where enumerable) up to r_max.
std::vector<double> singular_moduli(const FunctionModel& model, double r_max, bool include_zeros = true);

/// Moves each radius outward until every factor*r keeps at least
/// max(rel_gap*factor*r, abs_gap) away from every singular modulus.
std::vector<double> nudge_radii(std::span<const double> grid, std::span<const double> moduli, double rel_gap,
                                double abs_gap = 0.0, std::span<const double> factors = {});

/// |T(r,f) - T(r,1/(f-a))| over the grid; passes when its fitted slope
/// against log r is at most slope_tolerance.
CheckReport first_main_check(const FunctionModel& model, cplx a, std::span<const double> r_grid,
                             const QuadratureConfig& cfg = {}, double slope_tolerance = 0.05);

/// Order of growth: slope of log T against log r over the upper half of the
/// grid (in log r). Logarithmic growth (T linear in log r within 1%, as for
/// rational functions) reports order 0.
double growth_order_estimate(const FunctionModel& model, std::span<const double> r_grid,
                             const QuadratureConfig& cfg = {});

struct NevanlinnaRow {
  double r, m, N, T, quad_error;
};
std::vector<NevanlinnaRow> nevanlinna_table(const FunctionModel& model, std::span<const double> r_grid,
                                            const QuadratureConfig& cfg = {});

}  // namespace nevan
