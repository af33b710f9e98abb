// Acceptance runner: one PASS/FAIL line per criterion.
// usage: acceptance <path-to-nevan-cli> <scratch-dir>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nevan/bounds.hpp"
#include "nevan/diffpoly.hpp"
#include "nevan/model_text.hpp"
#include "nevan/nevanlinna.hpp"
#include "nevan/verify.hpp"

namespace fs = std::filesystem;
using namespace nevan;
using std::numbers::pi;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

int failures = 0;

void run(int id, const char* title, double budget_s, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.ok = false;
    out.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0 && secs > budget_s) out.require(false, "over time budget");
  std::printf("[%s] %d. %s (%.2f s)%s%s\n", out.ok ? "PASS" : "FAIL", id, title, secs, out.detail.empty() ? "" : ": ",
              out.detail.c_str());
  std::fflush(stdout);
  if (!out.ok) ++failures;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

std::string read_all(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

bool same_tree(const fs::path& a, const fs::path& b, std::string* why) {
  std::vector<fs::path> fa, fb;
  for (const auto& e : fs::recursive_directory_iterator(a))
    if (e.is_regular_file()) fa.push_back(fs::relative(e.path(), a));
  for (const auto& e : fs::recursive_directory_iterator(b))
    if (e.is_regular_file()) fb.push_back(fs::relative(e.path(), b));
  std::sort(fa.begin(), fa.end());
  std::sort(fb.begin(), fb.end());
  if (fa != fb) {
    *why = "file lists differ";
    return false;
  }
  if (fa.empty()) {
    *why = "no artifacts written";
    return false;
  }
  for (const auto& f : fa)
    if (read_all(a / f) != read_all(b / f)) {
      *why = "content differs in " + f.string();
      return false;
    }
  return true;
}

DiffPolynomial random_diffpoly(std::mt19937_64& rng, int max_degree) {
  std::uniform_int_distribution<int> nterms(1, 4), expo(0, 2), order(0, 3), coef(1, 9);
  const char* coeffs[] = {"1", "z", "(z^2+1)", "(z-2)/(z+3)", "z^3"};
  DiffPolynomial p;
  while (p.empty()) {
    std::string text;
    const int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
      std::string term = std::to_string(coef(rng)) + "*" + coeffs[expo(rng) + 2 * (coef(rng) > 6)];
      const int factors = std::min(max_degree, expo(rng));
      for (int f = 0; f < factors; ++f) term += "*w^(" + std::to_string(order(rng)) + ")";
      text += (t ? " + " : "") + term;
    }
    p = parse_diffpoly(text);
  }
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: %s <nevan-cli> <scratch-dir>\n", argv[0]);
    return 2;
  }
  const fs::path cli = argv[1];
  const fs::path scratch = argv[2];
  fs::create_directories(scratch);

  run(1, "kappa upper bound", 5.0, [](Outcome& o) {
    const double at_reference = kappa_objective(0.815508, 0.845890, 1e-9);
    o.require(at_reference < 5.3078, "objective at the reference point is " + fmt(at_reference));
    const auto k = optimize_kappa();
    o.require(k.objective <= 5.3078, "optimum " + fmt(k.objective));
    o.require(std::abs(k.alpha - 0.815508) < 0.02 && std::abs(k.beta - 0.845890) < 0.02,
              "optimizer landed at (" + fmt(k.alpha) + ", " + fmt(k.beta) + ")");
  });

  run(2, "kappa lower-bound witness from exp(z^n)", 30.0, [](Outcome& o) {
    const int ns[] = {8, 16, 32, 64};
    const double rs[] = {10.0, 100.0};
    const auto rows = sharpness_experiment(ns, rs);
    double prev = -1e300;
    for (const auto& row : rows) {
      const double ref = std::log(pi) - row.n * std::log(row.n / (row.n - 1.0));
      o.require(std::abs(row.gap - ref) <= 1e-4, "analytic gap off at n=" + std::to_string(row.n));
      o.require(std::abs(row.gap_numeric - row.gap) <= 1e-4, "numeric gap off at n=" + std::to_string(row.n));
      o.require(row.gap < 0.144730, "gap above log(pi/e) at n=" + std::to_string(row.n));
      if (row.r == 100.0) {
        o.require(row.gap > prev, "gap not increasing at n=" + std::to_string(row.n));
        prev = row.gap;
        if (row.n == 64) o.require(row.gap >= 0.1368, "gap(64) = " + fmt(row.gap));
      }
    }
  });

  run(3, "GG, Theorem C, Lemma C and Lemma B suites over the corpus", 300.0, [](Outcome& o) {
    const auto corpus = make_corpus(42);
    const auto grid = make_grid(5.0, 500.0, 40);
    const SuiteParams p;
    const std::pair<const char*, SuiteResult> suites[] = {
        {"gg", gg_suite(corpus, grid, p)},
        {"theorem-c", theorem_c_suite(corpus, grid, p)},
        {"lemma-c", lemma_c_suite(corpus, grid, p)},
        {"lemma-b", lemma_b_suite(corpus, grid, p)},
    };
    for (const auto& [name, res] : suites) {
      o.require(!res.reports.empty(), std::string(name) + " produced no reports");
      o.require(res.violations_above_onset() == 0, std::string(name) + " has violations above onset");
      for (const auto& rep : res.reports) o.require(rep.grid.size() == 40, rep.name + " grid is not 40 points");
    }
  });

  run(4, "quadrature exactness", 30.0, [](Outcome& o) {
    const Polynomial z = Polynomial::identity();
    for (int k : {1, 2, 3})
      for (double r : {2.0, 10.0, 100.0}) {
        const double m = proximity(FunctionModel::rational(z.pow(k)), r).value;
        o.require(std::abs(m - k * std::log(r)) <= 1e-9, "m(r, z^k) at k=" + std::to_string(k) + " r=" + fmt(r));
      }
    for (int n : {2, 3})
      for (double r : {2.0, 5.0}) {
        const double T = characteristic(FunctionModel::exp_power(n), r).value;
        const double ref = std::pow(r, n) / pi;
        o.require(std::abs(T - ref) <= 1e-6 * ref, "T(r, exp(z^n)) at n=" + std::to_string(n) + " r=" + fmt(r));
      }
    const double ratio = characteristic(FunctionModel::tan_linear(1.0, 0.0), 50.0).value / 50.0;
    o.require(std::abs(ratio - 2 / pi) <= 0.05 * 2 / pi, "T(50, tan)/50 = " + fmt(ratio));
  });

  run(5, "first main theorem boundedness", 0.0, [](Outcome& o) {
    const auto corpus = make_corpus(42);
    auto find = [&](const std::string& name) -> const FunctionModel& {
      for (const auto& e : corpus)
        if (e.name == name) return e.model;
      throw std::runtime_error("corpus entry missing: " + name);
    };
    const std::pair<std::string, cplx> pairs[] = {
        {"rational-01", 0.0},       {"rational-02", 1.0},      {"rational-03", 2.0},
        {"rational-04", {0, 1}},    {"rational-05", -1.0},     {"rational-06", 0.0},
        {"exp(z^2)", 0.0},          {"exp(z^4)", 0.0},         {"tan(z)", 0.0},
        {"tan(z/2+1)", 1.0},
    };
    const auto grid = make_grid(5.0, 500.0, 40);
    for (const auto& [name, a] : pairs) {
      const auto rep = first_main_check(find(name), a, grid);
      o.require(rep.slope_fit && std::abs(*rep.slope_fit) <= 0.05,
                name + " slope " + fmt(rep.slope_fit.value_or(NAN)));
    }
  });

  run(6, "Riccati casebook: m(r, tan) and m(r, 1/tan) are bounded", 120.0, [](Outcome& o) {
    const auto grid = make_grid(5.0, 50.0, 40);
    const auto [direct, recip] = riccati_case(grid);
    for (const CheckReport* rep : {&direct, &recip}) {
      o.require(rep->slope_fit && *rep->slope_fit <= 0.05, rep->name + " slope " + fmt(rep->slope_fit.value_or(NAN)));
      for (double m : rep->margins) o.require(m >= 0.0, rep->name + " has a negative margin");
    }
  });

  run(7, "Painleve slopes 4, 5, 15", 0.0, [](Outcome& o) {
    const std::tuple<PainleveKind, double, double, int, int> expected[] = {
        {PainleveKind::I, 2.5, 4.0, 2, 1},
        {PainleveKind::II, 3.0, 5.0, 2, 1},
        {PainleveKind::IV, 4.0, 15.0, 4, 3},
    };
    for (const auto& [kind, sigma, slope, weights, degrees] : expected) {
      const auto res = painleve_case(kind, {RhoStrategy::FixedFactor, 2.0});
      const auto direct = asymptotic_slope(res.form, sigma, {RhoStrategy::FixedFactor, 2.0});
      o.require(res.sigma == sigma, to_string(kind) + " sigma");
      o.require(direct.slope == slope && res.slope.slope == slope, to_string(kind) + " slope " + fmt(direct.slope));
      o.require(res.sum_weights_Q == weights, to_string(kind) + " sum of weights of Q");
      o.require(res.coefficient_degrees == degrees, to_string(kind) + " coefficient degrees");
    }
  });

  run(8, "sum-form certificates dominate max-form certificates", 0.0, [](Outcome& o) {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> n_power(1, 3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
      const int n = n_power(rng);
      const auto form = validate_clunie_split(n, random_diffpoly(rng, 3), random_diffpoly(rng, n));
      const double r = 1.0 + 99.0 * u(rng);
      const double rho = r * (1.05 + 3.0 * u(rng));
      const double T = std::exp(10.0 * u(rng));
      const auto sum = clunie_certificate(form, r, rho, T, CoefficientMode::ClosedForm, CertificateMode::Erratum);
      const auto max = clunie_certificate(form, r, rho, T, CoefficientMode::ClosedForm, CertificateMode::Legacy);
      o.require(sum.total >= max.total, "case " + std::to_string(i) + ": " + format_diffpoly(form.Q));
    }
  });

  run(9, "casebook artifacts are byte-identical across runs", 0.0, [&](Outcome& o) {
    const fs::path a = scratch / "casebook-a", b = scratch / "casebook-b";
    fs::remove_all(a);
    fs::remove_all(b);
    for (const auto& dir : {a, b}) {
      const std::string cmd =
          "\"" + cli.string() + "\" casebook --seed 42 --out \"" + dir.string() + "\" > \"" + dir.string() + ".log\"";
      const int rc = std::system(cmd.c_str());
      o.require(rc == 0, "casebook exited with status " + std::to_string(rc));
    }
    std::string why;
    o.require(same_tree(a, b, &why), why);
  });

  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
