#include "nevan/nevanlinna.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nevan/errors.hpp"
#include "parallel.hpp"

namespace nevan {

namespace {

constexpr double kOriginTol = 1e-300;

cplx on_circle(double r, double theta) { return std::polar(r, theta); }

void require_radius(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorCode::DomainError, "radius must be positive");
}

// BoundaryPole when a pole sits on the circle. Models whose pole set cannot
// be enumerated skip the check; quadrature then resamples around it.
void check_boundary(const FunctionModel& model, double r) {
  try {
    (void)model.poles().in_disc(r, boundary_tolerance(r));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Unsupported) throw;
  }
}

FunctionModel reciprocal_of_shift(const FunctionModel& model, cplx a) {
  return FunctionModel::reciprocal(a == cplx(0.0, 0.0) ? model : FunctionModel::shifted(model, a));
}

double count_from(const std::vector<PoleRecord>& points, double r) {
  std::vector<double> terms;
  terms.reserve(points.size());
  for (const auto& p : points) {
    const double m = std::abs(p.location);
    terms.push_back(p.multiplicity * (m <= kOriginTol ? std::log(r) : std::log(r / m)));
  }
  return pairwise_sum(terms);
}

NevanlinnaValue mean_log_plus(const FunctionModel& model, double r, const QuadratureConfig& cfg,
                              const std::function<double(cplx)>& log_modulus, const char* what) {
  const QuadratureConfig c = circle_config(model, r, cfg);
  QuadratureResult q = circle_mean([&](double t) { return std::max(0.0, log_modulus(on_circle(r, t))); }, c);
  require_converged(q, c, what);
  return {r, std::max(0.0, q.value), q.error, NevanlinnaKind::Proximity};
}

}  // namespace

QuadratureConfig circle_config(const FunctionModel& model, double r, const QuadratureConfig& cfg) {
  QuadratureConfig c = cfg;
  switch (model.kind()) {
    case ModelKind::TanLinear:
      c.base_panels = std::max(c.base_panels, static_cast<int>(std::ceil(8.0 * std::abs(model.tan_a()) * r)));
      break;
    case ModelKind::RationalExp:
      c.base_panels = std::max(c.base_panels, 16 * model.exponent().degree());
      break;
    case ModelKind::Reciprocal:
    case ModelKind::Shifted:
    case ModelKind::Scaled:
      return circle_config(model.inner(), r, cfg);
    case ModelKind::Rational:
      break;
  }
  c.base_panels = std::min(c.base_panels, 1 << 16);
  return c;
}

NevanlinnaValue proximity(const FunctionModel& model, double r, const QuadratureConfig& cfg) {
  require_radius(r);
  check_boundary(model, r);
  return mean_log_plus(model, r, cfg, [&](cplx z) { return log_abs(model, z); }, "proximity");
}

NevanlinnaValue proximity_at(const FunctionModel& model, cplx a, double r, const QuadratureConfig& cfg) {
  return proximity(reciprocal_of_shift(model, a), r, cfg);
}

NevanlinnaValue counting(const FunctionModel& model, double r) {
  require_radius(r);
  return {r, count_from(poles_in_disc(model, r), r), 0.0, NevanlinnaKind::Counting};
}

NevanlinnaValue counting_at(const FunctionModel& model, cplx a, double r) {
  require_radius(r);
  return {r, count_from(zeros_in_disc(model, a, r), r), 0.0, NevanlinnaKind::Counting};
}

NevanlinnaValue characteristic(const FunctionModel& model, double r, const QuadratureConfig& cfg) {
  const NevanlinnaValue n = counting(model, r);
  const NevanlinnaValue m = proximity(model, r, cfg);
  return {r, m.value + n.value, m.quadrature_error, NevanlinnaKind::Characteristic};
}

NevanlinnaValue characteristic_at(const FunctionModel& model, cplx a, double r, const QuadratureConfig& cfg) {
  const NevanlinnaValue n = counting_at(model, a, r);
  const NevanlinnaValue m = proximity_at(model, a, r, cfg);
  return {r, m.value + n.value, m.quadrature_error, NevanlinnaKind::Characteristic};
}

NevanlinnaValue proximity_derivative_ratio(const FunctionModel& model, int k, int j, double r,
                                           const QuadratureConfig& cfg) {
  require_radius(r);
  if (k < 0 || j < 0 || k == j) throw Error(ErrorCode::OrderError, "need distinct nonnegative orders");
  if (std::max(k, j) > EvalOptions{}.max_order)
    throw Error(ErrorCode::OrderTooLarge, "derivative order above " + std::to_string(EvalOptions{}.max_order));
  check_boundary(model, r);
  return mean_log_plus(model, r, cfg, [&](cplx z) { return log_abs_derivative_ratio(model, z, k, j); },
                       "derivative ratio proximity");
}

std::vector<double> singular_moduli(const FunctionModel& model, double r_max, bool include_zeros) {
  std::vector<double> out;
  try {
    out = model.poles().moduli_up_to(r_max);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Unsupported) throw;
  }
  if (include_zeros) {
    try {
      const auto z = model.a_points(0.0).moduli_up_to(r_max);
      out.insert(out.end(), z.begin(), z.end());
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Unsupported) throw;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> nudge_radii(std::span<const double> grid, std::span<const double> moduli, double rel_gap,
                                double abs_gap, std::span<const double> factors) {
  static constexpr double kOne[] = {1.0};
  if (factors.empty()) factors = kOne;
  std::vector<double> out(grid.begin(), grid.end());
  for (double& r : out) {
    for (int pass = 0; pass < 10000; ++pass) {
      bool moved = false;
      for (double c : factors) {
        const double cr = c * r;
        const double gap = std::max(rel_gap * cr, abs_gap);
        for (double m : moduli) {
          if (std::abs(cr - m) < gap) {
            r = (m + 1.0001 * std::max(rel_gap * (m + gap), abs_gap)) / c;
            moved = true;
            break;
          }
        }
        if (moved) break;
      }
      if (!moved) break;
    }
  }
  return out;
}

CheckReport first_main_check(const FunctionModel& model, cplx a, std::span<const double> r_grid,
                             const QuadratureConfig& cfg, double slope_tolerance) {
  CheckReport rep;
  rep.name = "first-main";
  rep.requested_grid.assign(r_grid.begin(), r_grid.end());
  const double r_max = r_grid.empty() ? 0.0 : 2.0 * *std::max_element(r_grid.begin(), r_grid.end());
  std::vector<double> moduli = singular_moduli(model, r_max, false);
  const auto ap = model.a_points(a).moduli_up_to(r_max);
  moduli.insert(moduli.end(), ap.begin(), ap.end());
  rep.grid = nudge_radii(r_grid, moduli, 10.0 * cfg.singularity_guard);

  const size_t n = rep.grid.size();
  rep.lhs.resize(n);
  rep.rhs.resize(n);
  rep.tolerances.resize(n);
  detail::parallel_for(n, [&](size_t i) {
    const auto tf = characteristic(model, rep.grid[i], cfg);
    const auto ta = characteristic_at(model, a, rep.grid[i], cfg);
    rep.lhs[i] = tf.value;
    rep.rhs[i] = ta.value;
    rep.tolerances[i] = 3.0 * (tf.quadrature_error + ta.quadrature_error);
  });
  std::vector<double> d(n);
  for (size_t i = 0; i < n; ++i) d[i] = std::abs(rep.lhs[i] - rep.rhs[i]);
  rep.margins.resize(n);
  rep.min_margin = n ? rep.rhs[0] - rep.lhs[0] : 0.0;
  for (size_t i = 0; i < n; ++i) {
    rep.margins[i] = rep.rhs[i] - rep.lhs[i];
    rep.min_margin = std::min(rep.min_margin, rep.margins[i]);
    rep.tolerance_used = std::max(rep.tolerance_used, rep.tolerances[i]);
  }
  rep.slope_fit = fit_log_slope(rep.grid, d);
  rep.passed = std::abs(*rep.slope_fit) <= slope_tolerance;
  if (rep.passed) {
    rep.onset_radius = rep.grid.front();
  } else {
    rep.violations = rep.grid;
  }
  return rep;
}

std::vector<NevanlinnaRow> nevanlinna_table(const FunctionModel& model, std::span<const double> r_grid,
                                            const QuadratureConfig& cfg) {
  const double r_max = r_grid.empty() ? 0.0 : *std::max_element(r_grid.begin(), r_grid.end());
  const auto moduli = singular_moduli(model, 2.0 * r_max, false);
  const auto grid = nudge_radii(r_grid, moduli, 10.0 * cfg.singularity_guard);
  std::vector<NevanlinnaRow> rows(grid.size());
  detail::parallel_for(grid.size(), [&](size_t i) {
    const auto m = proximity(model, grid[i], cfg);
    const auto n = counting(model, grid[i]);
    rows[i] = {grid[i], m.value, n.value, m.value + n.value, m.quadrature_error};
  });
  return rows;
}

double growth_order_estimate(const FunctionModel& model, std::span<const double> r_grid,
                             const QuadratureConfig& cfg) {
  if (r_grid.size() < 3) throw Error(ErrorCode::GridTooSmall, "growth order needs at least three radii");
  const auto [lo, hi] = std::minmax_element(r_grid.begin(), r_grid.end());
  if (!(*lo > 0.0) || *hi < 10.0 * *lo) throw Error(ErrorCode::GridTooSmall, "grid must span a decade");

  const auto rows = nevanlinna_table(model, r_grid, cfg);
  std::vector<double> rs, ts, logt;
  for (const auto& row : rows) {
    rs.push_back(row.r);
    ts.push_back(row.T);
  }
  // T = A log r + B within 1% means logarithmic growth.
  const double a = fit_log_slope(rs, ts);
  double mean_t = 0.0, mean_l = 0.0;
  for (size_t i = 0; i < rs.size(); ++i) {
    mean_t += ts[i];
    mean_l += std::log(rs[i]);
  }
  mean_t /= rs.size();
  mean_l /= rs.size();
  double worst = 0.0, scale = 0.0;
  for (size_t i = 0; i < rs.size(); ++i) {
    const double fit = mean_t + a * (std::log(rs[i]) - mean_l);
    worst = std::max(worst, std::abs(ts[i] - fit));
    scale = std::max(scale, std::abs(ts[i]));
  }
  if (worst <= 1e-2 * std::max(scale, 1e-300)) return 0.0;
  // Lower-order terms bias the slope at small r; fit the upper half in log r.
  const double mid = std::sqrt(*lo * *hi);
  std::vector<double> upper_r;
  for (size_t i = 0; i < rs.size(); ++i) {
    if (rs[i] < mid) continue;
    if (!(ts[i] > 0.0)) throw Error(ErrorCode::DomainError, "characteristic vanishes on the grid");
    upper_r.push_back(rs[i]);
    logt.push_back(std::log(ts[i]));
  }
  return fit_log_slope(upper_r, logt);
}

}  // namespace nevan
