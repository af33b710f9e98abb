#include "nevan/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nevan/errors.hpp"
#include "nevan/model_text.hpp"
#include "nevan/nevanlinna.hpp"
#include "parallel.hpp"

namespace nevan {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
const double kInvE = std::exp(-1.0);

bool contains_tan(const FunctionModel& m) {
  switch (m.kind()) {
    case ModelKind::TanLinear: return true;
    case ModelKind::Reciprocal:
    case ModelKind::Shifted:
    case ModelKind::Scaled: return contains_tan(m.inner());
    default: return false;
  }
}

std::string pair_label(int k, int j) { return "(" + std::to_string(k) + "," + std::to_string(j) + ")"; }

cplx on_circle(double r, double t) { return std::polar(r, t); }

// Mean over the arcs of H, normalised by 2pi.
QuadratureResult arc_mean(const std::function<double(double)>& g, const ArcSet& H, const QuadratureConfig& cfg) {
  QuadratureResult total;
  for (const auto& [a, b] : H.arcs) {
    const QuadratureResult q = integrate(g, a, b, cfg);
    total.value += q.value;
    total.error += q.error;
    total.unconverged_error += q.unconverged_error;
    total.evaluations += q.evaluations;
  }
  total.value /= kTwoPi;
  total.error /= kTwoPi;
  total.unconverged_error /= kTwoPi;
  return total;
}

CheckReport start_report(std::string name, std::span<const double> requested) {
  CheckReport rep;
  rep.name = std::move(name);
  rep.requested_grid.assign(requested.begin(), requested.end());
  return rep;
}

void size_report(CheckReport& rep) {
  const size_t n = rep.grid.size();
  rep.lhs.assign(n, 0.0);
  rep.rhs.assign(n, 0.0);
  rep.tolerances.assign(n, 0.0);
}

void finish_report(CheckReport& rep) {
  rep.finalize();
  if (rep.grid.size() >= 2) {
    rep.slope_fit = fit_log_slope(rep.grid, rep.lhs);
    rep.rhs_slope_fit = fit_log_slope(rep.grid, rep.rhs);
  }
}

}  // namespace

double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::vector<CorpusEntry> random_rationals(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  auto random_root = [&] {
    const double m = 0.3 + 5.7 * unit_uniform(rng);
    return std::polar(m, kTwoPi * unit_uniform(rng));
  };
  std::vector<CorpusEntry> out;
  for (int i = 0; i < count; ++i) {
    const int dp = static_cast<int>(unit_uniform(rng) * 7.0);
    const int dq = 1 + static_cast<int>(unit_uniform(rng) * 6.0);
    std::vector<cplx> zp, zq;
    for (int k = 0; k < dp; ++k) zp.push_back(random_root());
    for (int k = 0; k < dq; ++k) zq.push_back(random_root());
    const cplx lead = std::polar(0.5 + 1.5 * unit_uniform(rng), kTwoPi * unit_uniform(rng));
    RationalFunction rat(Polynomial::from_roots(zp, lead), Polynomial::from_roots(zq));
    char name[32];
    std::snprintf(name, sizeof name, "rational-%02d", i + 1);
    out.push_back({name, "rational", FunctionModel::rational(std::move(rat))});
  }
  return out;
}

std::vector<CorpusEntry> make_corpus(std::uint64_t seed) {
  std::vector<CorpusEntry> out = random_rationals(seed, 20);
  for (int n : {2, 4, 8, 16, 32, 64}) out.push_back({"exp(z^" + std::to_string(n) + ")", "exp", FunctionModel::exp_power(n)});
  out.push_back({"tan(z)", "tan", FunctionModel::tan_linear(1.0, 0.0)});
  out.push_back({"tan(z/2+1)", "tan", FunctionModel::tan_linear(0.5, 1.0)});
  return out;
}

FunctionModel normalize_at_origin(const FunctionModel& model) {
  cplx f0;
  try {
    f0 = eval(model, 0.0);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::PoleProximity || e.code() == ErrorCode::Overflow)
      throw Error(ErrorCode::NormalizationError, "f has a pole at the origin");
    throw;
  }
  if (std::abs(f0) < 1e-300) throw Error(ErrorCode::NormalizationError, "f vanishes at the origin");
  if (f0 == cplx(1.0, 0.0)) return model;
  const cplx s = 1.0 / f0;
  switch (model.kind()) {
    case ModelKind::Rational:
      return FunctionModel::rational(model.rational_part() * RationalFunction(s));
    case ModelKind::RationalExp:
      return FunctionModel::rational_exp(model.rational_part() * RationalFunction(s), model.exponent());
    case ModelKind::Scaled:
      return FunctionModel::scaled(model.inner(), model.constant() * s);
    default:
      return FunctionModel::scaled(model, s);
  }
}

ArcSet ArcSet::full_circle() { return {{{0.0, kTwoPi}}}; }

double ArcSet::measure() const {
  double m = 0.0;
  for (const auto& [a, b] : arcs) m += b - a;
  return m;
}

std::string ArcSet::describe() const {
  std::string s;
  for (const auto& [a, b] : arcs) {
    if (!s.empty()) s += " U ";
    s += "[" + format_double(a) + ", " + format_double(b) + "]";
  }
  return s;
}

ArcSet random_arcs(std::mt19937_64& rng, int count) {
  std::vector<std::pair<double, double>> raw;
  for (int i = 0; i < count; ++i) {
    const double start = kTwoPi * unit_uniform(rng);
    const double len = 0.2 + unit_uniform(rng);
    const double end = start + len;
    if (end <= kTwoPi) {
      raw.emplace_back(start, end);
    } else {
      raw.emplace_back(start, kTwoPi);
      raw.emplace_back(0.0, end - kTwoPi);
    }
  }
  std::sort(raw.begin(), raw.end());
  ArcSet H;
  for (const auto& arc : raw) {
    if (!H.arcs.empty() && arc.first <= H.arcs.back().second)
      H.arcs.back().second = std::max(H.arcs.back().second, arc.second);
    else
      H.arcs.push_back(arc);
  }
  return H;
}

std::vector<double> prepare_grid(const FunctionModel& model, std::span<const double> grid,
                                 std::span<const double> factors, const SuiteParams& p,
                                 std::vector<std::string>* notes) {
  double reach = 1.0;
  for (double c : factors) reach = std::max(reach, c);
  const double r_max = grid.empty() ? 0.0 : *std::max_element(grid.begin(), grid.end());
  const auto moduli = singular_moduli(model, 1.5 * reach * r_max + 1.0, true);
  const double abs_gap = contains_tan(model) ? p.tan_gap : 0.0;
  auto out = nudge_radii(grid, moduli, 10.0 * p.quad.singularity_guard, abs_gap, factors);
  if (notes) {
    for (size_t i = 0; i < out.size(); ++i)
      if (out[i] != grid[i]) notes->push_back("nudged r " + format_double(grid[i]) + " -> " + format_double(out[i]));
  }
  return out;
}

CheckReport check_lemma_b(const FunctionModel& model, const ArcSet& H, double alpha,
                          std::span<const double> r_grid, const SuiteParams& p) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorCode::DomainError, "Lemma B needs 0 < alpha < 1");
  if (H.arcs.empty()) throw Error(ErrorCode::DomainError, "empty angle set");
  for (const auto& [a, b] : H.arcs)
    if (!(0.0 <= a && a < b && b <= kTwoPi)) throw Error(ErrorCode::DomainError, "arcs must lie in [0, 2pi]");
  CheckReport rep = start_report("lemma-b " + H.describe(), r_grid);
  rep.grid = prepare_grid(model, r_grid, {}, p, &rep.notes);
  size_report(rep);
  std::vector<int> fallback(rep.grid.size(), 0);
  detail::parallel_for(rep.grid.size(), [&](size_t i) {
    const double r = rep.grid[i];
    const QuadratureConfig cfg = circle_config(model, r, p.quad);
    auto logf = [&](double t) { return log_abs(model, on_circle(r, t)); };
    const QuadratureResult lhs = arc_mean([&](double t) { return std::max(0.0, logf(t)); }, H, cfg);
    require_converged(lhs, cfg, "Lemma B left side");

    double shift = -std::numeric_limits<double>::infinity();
    for (const auto& [a, b] : H.arcs) {
      const int n = std::max(16, static_cast<int>(4096.0 * (b - a) / kTwoPi));
      for (int s = 0; s <= n; ++s) shift = std::max(shift, alpha * logf(a + (b - a) * s / n));
    }
    double log_mean = 0.0, log_err = 0.0;
    bool done = false;
    if (shift <= 600.0) {
      try {
        const QuadratureResult q =
            arc_mean([&](double t) { return std::exp(alpha * logf(t) - shift); }, H, cfg);
        require_converged(q, cfg, "Lemma B power mean");
        if (q.value > 0.0) {
          log_mean = shift + std::log(q.value);
          log_err = q.error / q.value;
          done = true;
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::ToleranceNotMet) throw;
      }
    }
    if (!done) {
      // Jensen on E = H ∩ {|f| > 1}, minimised over the unknown measure of E.
      fallback[i] = 1;
      const double A = kTwoPi * lhs.value, x = alpha * A, h = H.measure();
      if (A <= 0.0)
        log_mean = -std::numeric_limits<double>::infinity();
      else if (x >= h)
        log_mean = std::log(h / kTwoPi) + x / h;
      else
        log_mean = std::log(x / kTwoPi) + 1.0;
      log_err = 0.0;
    }
    rep.lhs[i] = lhs.value;
    rep.rhs[i] = (std::max(0.0, log_mean) + kInvE) / alpha;
    rep.tolerances[i] = 3.0 * (lhs.error + log_err / alpha);
  });
  for (size_t i = 0; i < fallback.size(); ++i)
    if (fallback[i])
      rep.notes.push_back("r " + format_double(rep.grid[i]) + ": power mean bounded below by Jensen");
  finish_report(rep);
  return rep;
}

CheckReport check_gg(const FunctionModel& model, std::span<const double> r_grid, const SuiteParams& p) {
  cplx f0;
  try {
    f0 = eval(model, 0.0);
  } catch (const Error&) {
    throw Error(ErrorCode::NormalizationError, "f(0) is not finite");
  }
  if (std::abs(f0 - cplx(1.0, 0.0)) > 1e-12)
    throw Error(ErrorCode::NormalizationError, "f(0) = " + format_complex(f0) + ", expected 1");
  const double c = p.rho_factor;
  CheckReport rep = start_report("gg", r_grid);
  const double factors[] = {1.0, c};
  rep.grid = prepare_grid(model, r_grid, factors, p, &rep.notes);
  size_report(rep);
  detail::parallel_for(rep.grid.size(), [&](size_t i) {
    const double r = rep.grid[i], rho = c * r;
    const auto lhs = proximity_derivative_ratio(model, 1, 0, r, p.quad);
    const auto T = characteristic(model, rho, p.quad);
    rep.lhs[i] = lhs.value;
    rep.rhs[i] = gg_bound(r, rho, T.value, p.gg_constant);
    rep.tolerances[i] = 3.0 * (lhs.quadrature_error + T.quadrature_error / std::max(T.value, 1e-300));
  });
  finish_report(rep);
  return rep;
}

CheckReport check_theorem_c(const FunctionModel& model, int k, int j, std::span<const double> r_grid,
                            const SuiteParams& p) {
  if (!(k > j && j >= 0)) throw Error(ErrorCode::OrderError, "need k > j >= 0");
  const double c = p.rho_factor;
  CheckReport rep = start_report("theorem-c " + pair_label(k, j), r_grid);
  const double factors[] = {1.0, c};
  rep.grid = prepare_grid(model, r_grid, factors, p, &rep.notes);
  size_report(rep);
  detail::parallel_for(rep.grid.size(), [&](size_t i) {
    const double r = rep.grid[i], rho = c * r;
    const auto lhs = proximity_derivative_ratio(model, k, j, r, p.quad);
    const auto T = characteristic(model, rho, p.quad);
    rep.lhs[i] = lhs.value;
    rep.rhs[i] = logderiv_bound(k, j, r, rho, T.value);
    rep.tolerances[i] =
        3.0 * (lhs.quadrature_error + (k - j) * T.quadrature_error / std::max(T.value, 1e-300));
  });
  finish_report(rep);
  return rep;
}

CheckReport check_lemma_c(const FunctionModel& model, int k, int j, double alpha, double beta,
                          std::span<const double> r_grid, const SuiteParams& p) {
  if (!(k > j && j >= 0)) throw Error(ErrorCode::OrderError, "need k > j >= 0");
  const double a = alpha * (k - j);
  if (!(a > 0.0 && a < 1.0 && beta > 0.0 && beta < 1.0))
    throw Error(ErrorCode::DomainError, "Lemma C needs 0 < alpha (k - j) < 1 and 0 < beta < 1");
  const double c = p.rho_factor;
  CheckReport rep = start_report("lemma-c " + pair_label(k, j), r_grid);
  const double factors[] = {1.0, c};
  rep.grid = prepare_grid(model, r_grid, factors, p, &rep.notes);
  size_report(rep);
  detail::parallel_for(rep.grid.size(), [&](size_t i) {
    const double r = rep.grid[i], rho = c * r;
    const QuadratureConfig cfg = circle_config(model, r, p.quad);
    const QuadratureResult lhs = circle_mean(
        [&](double t) { return std::exp(alpha * log_abs_derivative_ratio(model, on_circle(r, t), k, j)); }, cfg);
    require_converged(lhs, cfg, "Lemma C integral");
    const auto T = characteristic(model, rho, p.quad);
    rep.lhs[i] = lhs.value;
    rep.rhs[i] = integral_bound(k, j, alpha, beta, p.epsilon, r, rho, T.value);
    rep.tolerances[i] =
        3.0 * (lhs.error + rep.rhs[i] * a * T.quadrature_error / std::max(T.value, 1e-300));
  });
  finish_report(rep);
  return rep;
}

size_t SuiteResult::violations() const {
  size_t n = 0;
  for (const auto& r : reports) n += r.violations.size();
  return n;
}

size_t SuiteResult::violations_above_onset() const {
  size_t n = 0;
  for (const auto& r : reports) n += r.violations_above_onset();
  return n;
}

namespace {
void tag(CheckReport& rep, const CorpusEntry& e) { rep.name += " " + e.name; }
}  // namespace

SuiteResult gg_suite(const std::vector<CorpusEntry>& corpus, std::span<const double> grid, const SuiteParams& p) {
  SuiteResult out;
  for (const auto& e : corpus) {
    FunctionModel f = e.model;
    try {
      f = normalize_at_origin(e.model);
    } catch (const Error& err) {
      if (err.code() != ErrorCode::NormalizationError) throw;
      out.skipped.push_back(e.name + ": " + err.what());
      continue;
    }
    out.reports.push_back(check_gg(f, grid, p));
    tag(out.reports.back(), e);
  }
  return out;
}

SuiteResult theorem_c_suite(const std::vector<CorpusEntry>& corpus, std::span<const double> grid,
                            const SuiteParams& p) {
  SuiteResult out;
  for (const auto& e : corpus) {
    std::vector<std::pair<int, int>> pairs{{1, 0}, {2, 0}};
    if (e.family == "exp") pairs.emplace_back(2, 1);
    if (e.family == "rational") pairs.emplace_back(3, 0);
    for (auto [k, j] : pairs) {
      out.reports.push_back(check_theorem_c(e.model, k, j, grid, p));
      tag(out.reports.back(), e);
    }
  }
  return out;
}

SuiteResult lemma_c_suite(const std::vector<CorpusEntry>& corpus, std::span<const double> grid,
                          const SuiteParams& p) {
  SuiteResult out;
  for (const auto& e : corpus) {
    for (auto [k, j] : {std::pair{1, 0}, std::pair{2, 0}}) {
      out.reports.push_back(check_lemma_c(e.model, k, j, p.alpha_c, p.beta, grid, p));
      tag(out.reports.back(), e);
    }
  }
  return out;
}

SuiteResult lemma_b_suite(const std::vector<CorpusEntry>& corpus, std::span<const double> grid,
                          const SuiteParams& p) {
  SuiteResult out;
  std::mt19937_64 rng(p.seed);
  for (const auto& e : corpus) {
    const ArcSet arcs = random_arcs(rng, 1 + static_cast<int>(3.0 * unit_uniform(rng)));
    for (const ArcSet& H : {ArcSet::full_circle(), arcs}) {
      out.reports.push_back(check_lemma_b(e.model, H, p.alpha_b, grid, p));
      tag(out.reports.back(), e);
    }
  }
  return out;
}

std::vector<SharpnessRow> sharpness_experiment(std::span<const int> n_list, std::span<const double> r_list,
                                               const QuadratureConfig& cfg) {
  std::vector<std::pair<int, double>> cases;
  for (int n : n_list) {
    for (double r : r_list) {
      if (n < 2) throw Error(ErrorCode::DomainError, "sharpness needs n >= 2");
      if (!(r >= 1.0) || std::log(n) + (n - 1) * std::log(r) < 0.0)
        throw Error(ErrorCode::DomainError, "sharpness needs r >= 1 and n r^(n-1) >= 1");
      cases.emplace_back(n, r);
    }
  }
  std::vector<SharpnessRow> rows(cases.size());
  const double target = std::log(kPi) - 1.0;
  detail::parallel_for(cases.size(), [&](size_t i) {
    const auto [n, r] = cases[i];
    const FunctionModel f = FunctionModel::exp_power(n);
    SharpnessRow row;
    row.n = n;
    row.r = r;
    row.rho = n / (n - 1.0) * r;
    row.lhs = std::log(static_cast<double>(n)) + (n - 1) * std::log(r);
    row.lhs_numeric = proximity_derivative_ratio(f, 1, 0, r, cfg).value;
    // log+ of rho^n / (pi r) * rho / (rho - r), evaluated in logs.
    const double log_arg = n * std::log(row.rho) - std::log(kPi) - std::log(r) + std::log(row.rho / (row.rho - r));
    row.main_term = std::max(0.0, log_arg);
    const double T = characteristic(f, row.rho, cfg).value;
    row.main_term_numeric = main_log_term(r, row.rho, T);
    row.gap = row.lhs - row.main_term;
    row.gap_numeric = row.lhs_numeric - row.main_term_numeric;
    row.target = target;
    row.shortfall = target - row.gap;
    rows[i] = row;
  });
  return rows;
}

std::pair<CheckReport, CheckReport> riccati_case(std::span<const double> r_grid, const SuiteParams& p,
                                                 CertificateMode mode) {
  const FunctionModel tan = FunctionModel::tan_linear(1.0, 0.0);
  const ClunieForm form = validate_clunie_split(1, parse_diffpoly("w"), parse_diffpoly("w' - 1"));
  const DiffPolynomial mohonko = parse_diffpoly("w' - w^2 - 1");
  const double c = p.rho_factor;
  const double factors[] = {1.0, c};

  CheckReport a = start_report("riccati m(r, tan) vs clunie", r_grid);
  a.grid = prepare_grid(tan, r_grid, factors, p, &a.notes);
  size_report(a);
  CheckReport b = start_report("riccati m(r, 1/tan) vs mohonko", r_grid);
  b.grid = a.grid;
  b.notes = a.notes;
  size_report(b);
  detail::parallel_for(a.grid.size(), [&](size_t i) {
    const double r = a.grid[i], rho = c * r;
    const auto T = characteristic(tan, rho, p.quad);
    const double t_rel = T.quadrature_error / std::max(T.value, 1e-300);
    const auto m = proximity(tan, r, p.quad);
    const auto cert = clunie_certificate(form, r, rho, T.value, CoefficientMode::ClosedForm, mode);
    a.lhs[i] = m.value;
    a.rhs[i] = cert.total;
    a.tolerances[i] = 3.0 * (m.quadrature_error + cert.main_multiplier * t_rel);
    const auto mi = proximity_at(tan, 0.0, r, p.quad);
    const auto cert2 = mohonko_certificate(mohonko, r, rho, T.value, CoefficientMode::ClosedForm, mode);
    b.lhs[i] = mi.value;
    b.rhs[i] = cert2.total;
    b.tolerances[i] = 3.0 * (mi.quadrature_error + cert2.main_multiplier * t_rel);
  });
  finish_report(a);
  finish_report(b);
  return {std::move(a), std::move(b)};
}

std::string to_string(PainleveKind k) {
  switch (k) {
    case PainleveKind::I: return "painleve-I";
    case PainleveKind::II: return "painleve-II";
    case PainleveKind::IV: return "painleve-IV";
  }
  return "unknown";
}

PainleveResult painleve_case(PainleveKind which, RhoStrategy strategy, const ConstantBindings& bindings) {
  ConstantBindings b{{"alpha", 1.0}, {"beta", 1.0}, {"gamma", 1.0}};
  for (const auto& [k, v] : bindings) b[k] = v;
  PainleveResult res;
  res.which = which;
  switch (which) {
    case PainleveKind::I:
      res.equation = "w'' = 6*w^2 + z";
      res.form = validate_clunie_split(1, parse_diffpoly("6*w", b), parse_diffpoly("w'' - z", b));
      res.sigma = 2.5;
      res.target = 4.0;
      res.legacy_printed = 3.0;
      break;
    case PainleveKind::II:
      res.equation = "w'' = 2*w^3 + z*w + alpha";
      res.form = validate_clunie_split(2, parse_diffpoly("2*w", b), parse_diffpoly("w'' - z*w - alpha", b));
      res.sigma = 3.0;
      res.target = 5.0;
      res.legacy_printed = 4.0;
      break;
    case PainleveKind::IV:
      res.equation = "w*w'' = (1/2)*w'^2 + (3/2)*w^4 + 4*z*w^3 + 2*(z^2 - beta)*w^2 + gamma";
      res.form = validate_clunie_split(
          3, parse_diffpoly("(3/2)*w", b),
          parse_diffpoly("w*w'' - (1/2)*w'^2 - 4*z*w^3 - 2*(z^2 - beta)*w^2 - gamma", b));
      res.sigma = 4.0;
      res.target = 15.0;
      res.legacy_printed = 6.0;
      break;
  }
  res.slope = asymptotic_slope(res.form, res.sigma, strategy, CertificateMode::Erratum);
  res.legacy_slope = asymptotic_slope(res.form, res.sigma, strategy, CertificateMode::Legacy);
  res.match = res.slope.slope == res.target;
  res.sum_weights_Q = sum_weights(res.form.Q);
  res.coefficient_degrees = coefficient_degree_sum(res.form.P) + coefficient_degree_sum(res.form.Q);
  return res;
}

E1E2Parts e1_e2_decomposition(const FunctionModel& model, const DiffPolynomial& P, double r,
                              const QuadratureConfig& cfg) {
  if (!(r > 0.0)) throw Error(ErrorCode::DomainError, "radius must be positive");
  (void)poles_in_disc(model, r);
  const QuadratureConfig c = circle_config(model, r, cfg);
  auto logp = [&](double t) {
    return std::max(0.0, evaluate_diffpoly_scaled(P, model, on_circle(r, t)).log_abs());
  };
  auto inside = [&](double t) { return log_abs(model, on_circle(r, t)) < 0.0; };
  const QuadratureResult e1 = circle_mean([&](double t) { return inside(t) ? logp(t) : 0.0; }, c);
  const QuadratureResult e2 = circle_mean([&](double t) { return inside(t) ? 0.0 : logp(t); }, c);
  const QuadratureResult all = circle_mean(logp, c);
  require_converged(all, c, "m(r, P)");
  return {e1.value, e2.value, all.value, e1.error + e2.error + all.error};
}

}  // namespace nevan
