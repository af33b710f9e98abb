#include "nevan/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "nevan/errors.hpp"

namespace nevan {

double pairwise_sum(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  if (xs.size() <= 8) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

namespace {

struct Panel {
  double value, error, unconverged;
  long evals;
};

double simpson(double h, double fa, double fm, double fb) { return h / 6.0 * (fa + 4.0 * fm + fb); }

Panel refine(const std::function<double(double)>& g, double a, double b, double fa, double fm, double fb,
             double whole, double tol, int depth, int max_depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = g(lm), frm = g(rm);
  const double left = simpson(m - a, fa, flm, fm);
  const double right = simpson(b - m, fm, frm, fb);
  const double diff = left + right - whole;
  if (std::abs(diff) <= 15.0 * tol || !std::isfinite(diff)) {
    return {left + right + diff / 15.0, std::abs(diff) / 15.0, 0.0, 2};
  }
  if (depth >= max_depth) {
    return {left + right + diff / 15.0, std::abs(diff), std::abs(diff), 2};
  }
  Panel l = refine(g, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, max_depth);
  Panel r = refine(g, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, max_depth);
  return {l.value + r.value, l.error + r.error, l.unconverged + r.unconverged, l.evals + r.evals + 2};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& g, double a, double b,
                           const QuadratureConfig& cfg) {
  QuadratureResult out;
  if (b <= a) return out;
  const double frac = (b - a) / (2.0 * std::numbers::pi);
  const int panels = std::max(16, static_cast<int>(std::ceil(cfg.base_panels * std::min(1.0, frac))));
  const double h = (b - a) / panels;

  std::vector<double> f(2 * static_cast<size_t>(panels) + 1);
  for (size_t i = 0; i < f.size(); ++i) {
    const double x = i + 1 == f.size() ? b : a + 0.5 * h * static_cast<double>(i);
    f[i] = g(x);
  }
  std::vector<double> coarse(static_cast<size_t>(panels));
  for (int p = 0; p < panels; ++p) coarse[p] = simpson(h, f[2 * p], f[2 * p + 1], f[2 * p + 2]);
  const double estimate = pairwise_sum(coarse);
  const double tol_total = cfg.tol * std::max(1.0, std::abs(estimate));
  const double tol_panel = tol_total / panels;

  std::vector<double> values(coarse.size()), errors(coarse.size()), unconv(coarse.size());
  long evals = static_cast<long>(f.size());
  for (int p = 0; p < panels; ++p) {
    const double pa = a + h * p;
    const double pb = p + 1 == panels ? b : a + h * (p + 1);
    Panel r = refine(g, pa, pb, f[2 * p], f[2 * p + 1], f[2 * p + 2], coarse[p], tol_panel, 1,
                     cfg.max_refinement_depth);
    values[p] = r.value;
    errors[p] = r.error;
    unconv[p] = r.unconverged;
    evals += r.evals;
  }
  out.value = pairwise_sum(values);
  out.error = pairwise_sum(errors);
  out.unconverged_error = pairwise_sum(unconv);
  out.evaluations = evals;
  return out;
}

QuadratureResult circle_mean(const std::function<double(double)>& g, const QuadratureConfig& cfg) {
  QuadratureResult r = integrate(g, 0.0, 2.0 * std::numbers::pi, cfg);
  const double inv = 1.0 / (2.0 * std::numbers::pi);
  r.value *= inv;
  r.error *= inv;
  r.unconverged_error *= inv;
  return r;
}

void require_converged(const QuadratureResult& res, const QuadratureConfig& cfg, const char* what) {
  if (!std::isfinite(res.value) || !std::isfinite(res.error))
    throw Error(ErrorCode::ToleranceNotMet, std::string(what) + ": integrand produced a non-finite value");
  if (res.unconverged_error > std::sqrt(cfg.tol) * std::max(1.0, std::abs(res.value)))
    throw Error(ErrorCode::ToleranceNotMet,
                std::string(what) + ": refinement depth exhausted with error " + std::to_string(res.error));
}

}  // namespace nevan
