#include "nevan/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nevan/errors.hpp"

namespace nevan {

void CheckReport::finalize() {
  const size_t n = grid.size();
  if (lhs.size() != n || rhs.size() != n)
    throw Error(ErrorCode::DomainError, "report arrays differ in length");
  if (tolerances.size() != n) tolerances.assign(n, 0.0);
  margins.resize(n);
  violations.clear();
  min_margin = n ? std::numeric_limits<double>::infinity() : 0.0;
  tolerance_used = 0.0;
  long last_bad = -1;
  for (size_t i = 0; i < n; ++i) {
    margins[i] = rhs[i] - lhs[i];
    min_margin = std::min(min_margin, margins[i]);
    tolerance_used = std::max(tolerance_used, tolerances[i]);
    if (!(margins[i] >= -tolerances[i])) {
      violations.push_back(grid[i]);
      last_bad = static_cast<long>(i);
    }
  }
  if (last_bad < 0)
    onset_radius = n ? std::optional<double>(grid[0]) : std::nullopt;
  else if (static_cast<size_t>(last_bad) + 1 < n)
    onset_radius = grid[last_bad + 1];
  else
    onset_radius.reset();
  passed = violations.empty();
}

size_t CheckReport::violations_above_onset() const {
  if (!onset_radius) return violations.size();
  return static_cast<size_t>(
      std::count_if(violations.begin(), violations.end(), [&](double r) { return r >= *onset_radius; }));
}

double fit_log_slope(std::span<const double> rs, std::span<const double> ys) {
  const size_t n = std::min(rs.size(), ys.size());
  if (n < 2) throw Error(ErrorCode::GridTooSmall, "slope fit needs at least two points");
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < n; ++i) {
    mx += std::log(rs[i]);
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double dx = std::log(rs[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (ys[i] - my);
  }
  if (sxx == 0.0) throw Error(ErrorCode::GridTooSmall, "slope fit needs distinct radii");
  return sxy / sxx;
}

std::vector<double> make_grid(double start, double stop, int count, bool log_spaced) {
  if (!(start > 0.0) || !(start < stop) || count < 2)
    throw Error(ErrorCode::DomainError, "grid needs 0 < start < stop and count >= 2");
  std::vector<double> g(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / (count - 1);
    g[i] = log_spaced ? std::exp(std::log(start) + t * (std::log(stop) - std::log(start)))
                      : start + t * (stop - start);
  }
  g.front() = start;
  g.back() = stop;
  return g;
}

}  // namespace nevan
