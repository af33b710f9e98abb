// nevan: command-line front end for the Nevanlinna toolkit.
#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nevan/bounds.hpp"
#include "nevan/diffpoly.hpp"
#include "nevan/errors.hpp"
#include "nevan/io.hpp"
#include "nevan/model_text.hpp"
#include "nevan/nevanlinna.hpp"
#include "nevan/verify.hpp"

namespace fs = std::filesystem;
using namespace nevan;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GridSpec {
  double start = 5.0, stop = 500.0;
  int count = 40;
  bool log_spaced = true;
};

GridSpec parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() < 3 || parts.size() > 4) throw UsageError("--r-grid expects a:b:n[:log|:lin], got '" + text + "'");
  GridSpec g;
  try {
    size_t used = 0;
    g.start = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw std::invalid_argument(parts[0]);
    g.stop = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument(parts[1]);
    g.count = std::stoi(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument(parts[2]);
  } catch (const std::logic_error&) {
    throw UsageError("--r-grid has a malformed number: '" + text + "'");
  }
  if (parts.size() == 4) {
    if (parts[3] == "log") g.log_spaced = true;
    else if (parts[3] == "lin") g.log_spaced = false;
    else throw UsageError("--r-grid spacing must be log or lin, got '" + parts[3] + "'");
  }
  if (!(g.start > 0.0) || !(g.start < g.stop)) throw UsageError("--r-grid needs 0 < start < stop");
  if (g.count < 2) throw UsageError("--r-grid needs at least 2 points");
  return g;
}

std::vector<double> build_grid(const GridSpec& g) { return make_grid(g.start, g.stop, g.count, g.log_spaced); }

template <class T>
std::vector<T> parse_list(const std::string& text, const char* flag) {
  std::vector<T> out;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ',');) {
    try {
      size_t used = 0;
      if constexpr (std::is_same_v<T, int>)
        out.push_back(std::stoi(p, &used));
      else
        out.push_back(std::stod(p, &used));
      if (used != p.size()) throw std::invalid_argument(p);
    } catch (const std::logic_error&) {
      throw UsageError(std::string(flag) + " expects a comma-separated list, got '" + text + "'");
    }
  }
  if (out.empty()) throw UsageError(std::string(flag) + " is empty");
  return out;
}

std::string slug(const std::string& name) {
  std::string out;
  for (char c : name) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '.') {
      out += c;
    } else if (!out.empty() && out.back() != '-') {
      out += '-';
    }
  }
  while (!out.empty() && out.back() == '-') out.pop_back();
  return out;
}

struct Config {
  std::string model;
  std::string equation;
  std::string rhs;
  int n_power = 1;
  std::string r_grid;
  double rho_factor = 2.0;
  double alpha = -1.0, beta = 0.5, epsilon = 1e-9;
  std::vector<std::string> consts;
  std::string mode = "erratum";
  std::string out = "out";
  std::uint64_t seed = 42;
  int k = 1, j = 0;
  double r = 10.0;
  std::optional<double> t_rho;
  std::optional<double> sigma;
  std::string n_list = "8,16,32,64";
  std::string r_list = "100";
  std::string ra = "1", rb = "0", rc = "1";
  double gg_constant = kLogDerivConstant;
  std::optional<double> a_value;
};

ConstantBindings bindings(const Config& cfg) {
  ConstantBindings b;
  for (const auto& c : cfg.consts) {
    const auto eq = c.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--const expects name=value, got '" + c + "'");
    const RationalFunction v = parse_rational(c.substr(eq + 1));
    if (!v.is_constant()) throw UsageError("--const value must be a complex constant: '" + c + "'");
    b[c.substr(0, eq)] = v.numerator()[0];
  }
  return b;
}

CertificateMode cert_mode(const Config& cfg) {
  if (cfg.mode == "erratum") return CertificateMode::Erratum;
  if (cfg.mode == "legacy") return CertificateMode::Legacy;
  throw UsageError("--mode must be erratum or legacy");
}

SuiteParams suite_params(const Config& cfg) {
  SuiteParams p;
  p.rho_factor = cfg.rho_factor;
  if (cfg.alpha > 0.0) {
    p.alpha_b = cfg.alpha;
    p.alpha_c = cfg.alpha;
  }
  p.beta = cfg.beta;
  p.epsilon = cfg.epsilon;
  p.seed = cfg.seed;
  p.gg_constant = cfg.gg_constant;
  return p;
}

std::vector<CorpusEntry> corpus_for(const Config& cfg) {
  if (cfg.model.empty()) return make_corpus(cfg.seed);
  return {{cfg.model, "model", parse_model(cfg.model)}};
}

void emit_report(const fs::path& dir, const CheckReport& rep) {
  const std::string base = slug(rep.name);
  write_text(dir / (base + ".csv"), report_csv(rep));
  write_text(dir / (base + ".dat"), report_dat(rep));
  write_text(dir / (base + ".json"), report_json(rep));
}

int finish_suite(const Config& cfg, const std::string& suite, const SuiteResult& res) {
  const fs::path dir = fs::path(cfg.out) / suite;
  for (const auto& rep : res.reports) emit_report(dir, rep);
  write_text(fs::path(cfg.out) / (suite + ".json"), suite_json(suite, res));
  std::cout << suite << ": " << res.reports.size() << " reports, " << res.violations() << " violations ("
            << res.violations_above_onset() << " above onset)";
  if (!res.skipped.empty()) std::cout << ", " << res.skipped.size() << " skipped";
  std::cout << "\n";
  for (const auto& s : res.skipped) std::cout << "  skipped " << s << "\n";
  for (const auto& rep : res.reports)
    if (!rep.passed) std::cout << "  violation in " << rep.name << " min margin " << format_sig(rep.min_margin) << "\n";
  return res.violations() == 0 ? kExitOk : kExitViolation;
}

std::vector<double> grid_or(const Config& cfg, const char* fallback) {
  return build_grid(parse_grid(cfg.r_grid.empty() ? fallback : cfg.r_grid));
}

int cmd_characteristic(const Config& cfg) {
  if (cfg.model.empty()) throw UsageError("characteristic needs --model");
  const FunctionModel m = parse_model(cfg.model);
  const auto grid = grid_or(cfg, "5:500:40:log");
  const auto rows = nevanlinna_table(m, grid);
  const std::string csv = table_csv(rows);
  write_text(fs::path(cfg.out) / "characteristic.csv", csv);
  std::cout << csv;
  if (cfg.a_value) {
    const auto rep = first_main_check(m, *cfg.a_value, grid);
    emit_report(fs::path(cfg.out) / "first-main", rep);
    std::cout << "first main theorem slope " << format_sig(*rep.slope_fit) << (rep.passed ? " ok" : " too large")
              << "\n";
    return rep.passed ? kExitOk : kExitViolation;
  }
  return kExitOk;
}

int cmd_check(const Config& cfg, const std::string& which) {
  const auto corpus = corpus_for(cfg);
  const auto grid = grid_or(cfg, "5:500:40:log");
  const SuiteParams p = suite_params(cfg);
  const bool single = !cfg.model.empty();
  if (which == "gg") return finish_suite(cfg, which, gg_suite(corpus, grid, p));
  if (which == "lemma-b") return finish_suite(cfg, which, lemma_b_suite(corpus, grid, p));
  if (which == "theorem-c") {
    if (!single) return finish_suite(cfg, which, theorem_c_suite(corpus, grid, p));
    SuiteResult res;
    res.reports.push_back(check_theorem_c(corpus[0].model, cfg.k, cfg.j, grid, p));
    return finish_suite(cfg, which, res);
  }
  if (which == "lemma-c") {
    if (!single) return finish_suite(cfg, which, lemma_c_suite(corpus, grid, p));
    SuiteResult res;
    res.reports.push_back(check_lemma_c(corpus[0].model, cfg.k, cfg.j, p.alpha_c, p.beta, grid, p));
    return finish_suite(cfg, which, res);
  }
  throw UsageError("unknown check '" + which + "'");
}

double t_rho_for(const Config& cfg, double rho) {
  if (cfg.t_rho) return *cfg.t_rho;
  if (cfg.model.empty()) throw UsageError("bound needs --t-rho or --model to compute T(rho)");
  return characteristic(parse_model(cfg.model), rho).value;
}

int cmd_bound(const Config& cfg, const std::string& which) {
  if (cfg.equation.empty()) throw UsageError("bound needs --equation");
  const ConstantBindings b = bindings(cfg);
  const double rho = cfg.rho_factor * cfg.r;
  const double T = t_rho_for(cfg, rho);
  BoundCertificate c;
  if (which == "clunie") {
    if (cfg.rhs.empty()) throw UsageError("bound clunie needs --rhs for Q");
    const ClunieForm form = validate_clunie_split(cfg.n_power, parse_diffpoly(cfg.equation, b), parse_diffpoly(cfg.rhs, b));
    c = clunie_certificate(form, cfg.r, rho, T, CoefficientMode::ClosedForm, cert_mode(cfg));
  } else if (which == "mohonko") {
    c = mohonko_certificate(parse_diffpoly(cfg.equation, b), cfg.r, rho, T, CoefficientMode::ClosedForm,
                            cert_mode(cfg));
  } else {
    throw UsageError("unknown bound '" + which + "'");
  }
  c.sigma = cfg.sigma;
  const std::string json = certificate_json(c);
  write_text(fs::path(cfg.out) / (which + "-certificate.json"), json);
  std::cout << json;
  return kExitOk;
}

int cmd_slope(const Config& cfg, const std::string& which) {
  RhoStrategy strategy{RhoStrategy::FixedFactor, cfg.rho_factor};
  std::string json;
  if (which == "riccati") {
    const RationalFunction a = parse_rational(cfg.ra), b = parse_rational(cfg.rb), c = parse_rational(cfg.rc);
    const double sigma = cfg.sigma.value_or(1.0);
    const RiccatiMode mode = cert_mode(cfg) == CertificateMode::Erratum ? RiccatiMode::SumErratum : RiccatiMode::MaxAsPrinted;
    const auto res = riccati_bound(a, b, c, sigma, mode);
    std::ostringstream os;
    os << "{\n  \"equation\": \"riccati\",\n  \"a\": \"" << format_rational(a) << "\",\n  \"b\": \"" << format_rational(b)
       << "\",\n  \"c\": \"" << format_rational(c) << "\",\n  \"sigma\": " << format_sig(sigma)
       << ",\n  \"mode\": \"" << (mode == RiccatiMode::SumErratum ? "sum" : "max") << "\",\n  \"proximity_slope\": "
       << format_sig(res.proximity) << ",\n  \"reciprocal_slope\": "
       << (res.reciprocal_proximity ? format_sig(*res.reciprocal_proximity) : "null") << "\n}\n";
    json = os.str();
  } else {
    PainleveKind kind;
    if (which == "painleve-I") kind = PainleveKind::I;
    else if (which == "painleve-II") kind = PainleveKind::II;
    else if (which == "painleve-IV") kind = PainleveKind::IV;
    else throw UsageError("unknown slope '" + which + "'");
    json = painleve_json(painleve_case(kind, strategy, bindings(cfg)));
  }
  write_text(fs::path(cfg.out) / (which + "-slope.json"), json);
  std::cout << json;
  return kExitOk;
}

int cmd_kappa(const Config& cfg) {
  const std::string json = kappa_json(optimize_kappa(cfg.epsilon));
  write_text(fs::path(cfg.out) / "kappa.json", json);
  std::cout << json;
  return kExitOk;
}

int cmd_sharpness(const Config& cfg) {
  const auto ns = parse_list<int>(cfg.n_list, "--n");
  const auto rs = parse_list<double>(cfg.r_list, "--r");
  const auto rows = sharpness_experiment(ns, rs);
  write_text(fs::path(cfg.out) / "sharpness.csv", sharpness_csv(rows));
  write_text(fs::path(cfg.out) / "sharpness.json", sharpness_json(rows));
  std::cout << sharpness_csv(rows);
  return kExitOk;
}

int cmd_casebook(const Config& cfg) {
  const fs::path out(cfg.out);
  const auto grid = grid_or(cfg, "5:50:40:log");
  nlohmann::ordered_json summary;
  summary["seed"] = cfg.seed;
  summary["mode"] = cfg.mode;

  const auto [a, b] = riccati_case(grid, suite_params(cfg), cert_mode(cfg));
  for (const CheckReport* rep : {&a, &b}) {
    emit_report(out / "riccati", *rep);
    nlohmann::ordered_json j;
    j["name"] = rep->name;
    j["lhs_slope"] = round_sig(rep->slope_fit.value_or(0.0));
    j["min_margin"] = round_sig(rep->min_margin);
    j["violations"] = rep->violations;
    j["passed"] = rep->passed;
    summary["riccati"].push_back(j);
    std::cout << rep->name << ": lhs slope " << format_sig(rep->slope_fit.value_or(0.0)) << ", min margin "
              << format_sig(rep->min_margin) << "\n";
  }

  for (auto kind : {PainleveKind::I, PainleveKind::II, PainleveKind::IV}) {
    const auto res = painleve_case(kind, {RhoStrategy::FixedFactor, cfg.rho_factor}, bindings(cfg));
    write_text(out / "painleve" / (to_string(kind) + ".json"), painleve_json(res));
    summary["painleve"][to_string(kind)] = {{"slope", res.slope.slope}, {"target", res.target}, {"match", res.match}};
    std::cout << to_string(kind) << ": slope " << format_sig(res.slope.slope) << " target " << format_sig(res.target)
              << (res.match ? " match" : " MISMATCH") << "\n";
  }

  const int ns[] = {2, 4, 8, 16, 32, 64};
  const double rs[] = {10.0, 100.0};
  const auto rows = sharpness_experiment(ns, rs);
  write_text(out / "sharpness.csv", sharpness_csv(rows));
  write_text(out / "sharpness.json", sharpness_json(rows));
  for (const auto& row : rows)
    if (row.r == 100.0) summary["sharpness_gap_r100"][std::to_string(row.n)] = round_sig(row.gap);

  const KappaResult kappa = optimize_kappa(cfg.epsilon);
  write_text(out / "kappa.json", kappa_json(kappa));
  summary["kappa"] = {{"alpha", round_sig(kappa.alpha)}, {"beta", round_sig(kappa.beta)},
                      {"objective", round_sig(kappa.objective)}};
  std::cout << "kappa: objective " << format_sig(kappa.objective) << "\n";

  write_text(out / "summary.json", summary.dump(2) + "\n");
  return a.passed && b.passed ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nevanlinna characteristic and error-term bound toolkit"};
  app.fallthrough();
  app.require_subcommand(1);
  Config cfg;
  std::string grid_text;
  app.add_option("--model", cfg.model, "function model, e.g. 'exp(z^3)' or 'tan(z/2+1)'");
  app.add_option("--equation", cfg.equation, "differential polynomial P (Clunie left factor or Mohon'ko equation)");
  app.add_option("--rhs", cfg.rhs, "right side Q of f^n P = Q");
  app.add_option("--n-power", cfg.n_power, "power n in f^n P = Q")->check(CLI::PositiveNumber);
  app.add_option("--r-grid", cfg.r_grid, "radius grid a:b:n[:log|:lin]");
  app.add_option("--rho-factor", cfg.rho_factor, "rho = factor * r")->check(CLI::Range(1.0 + 1e-12, 1e6));
  app.add_option("--alpha", cfg.alpha, "exponent for Lemma B / Lemma C");
  app.add_option("--beta", cfg.beta, "beta for Lemma C");
  app.add_option("--epsilon", cfg.epsilon, "epsilon in the kappa objective and Lemma C")->check(CLI::PositiveNumber);
  app.add_option("--const", cfg.consts, "named constant binding name=value");
  app.add_option("--mode", cfg.mode, "erratum or legacy")->check(CLI::IsMember({"erratum", "legacy"}));
  app.add_option("--out", cfg.out, "output directory");
  app.add_option("--seed", cfg.seed, "corpus seed");
  app.add_option("--k", cfg.k, "derivative order k");
  app.add_option("--j", cfg.j, "derivative order j");
  app.add_option("--r", cfg.r_list, "radius list for sharpness; first value is r for bound");
  app.add_option("--n", cfg.n_list, "n list for sharpness");
  app.add_option("--sigma", cfg.sigma, "assumed order of growth");
  app.add_option("--t-rho", cfg.t_rho, "T(rho) supplied directly");
  app.add_option("--a", cfg.a_value, "value a for the first main theorem check");
  app.add_option("--ra", cfg.ra, "Riccati coefficient a");
  app.add_option("--rb", cfg.rb, "Riccati coefficient b");
  app.add_option("--rc", cfg.rc, "Riccati coefficient c");
  app.add_option("--gg-constant", cfg.gg_constant)->group("");

  std::string leaf;
  auto* characteristic_cmd = app.add_subcommand("characteristic", "table of m, N, T over the grid");
  auto* check = app.add_subcommand("check", "inequality suites");
  check->require_subcommand(1);
  for (const char* s : {"gg", "theorem-c", "lemma-b", "lemma-c"})
    check->add_subcommand(s)->callback([&leaf, s] { leaf = s; });
  auto* bound = app.add_subcommand("bound", "itemized certificates");
  bound->require_subcommand(1);
  for (const char* s : {"clunie", "mohonko"}) bound->add_subcommand(s)->callback([&leaf, s] { leaf = s; });
  auto* slope = app.add_subcommand("slope", "asymptotic log r slopes");
  slope->require_subcommand(1);
  for (const char* s : {"painleve-I", "painleve-II", "painleve-IV", "riccati"})
    slope->add_subcommand(s)->callback([&leaf, s] { leaf = s; });
  auto* kappa = app.add_subcommand("optimize-kappa", "minimise the kappa objective");
  auto* sharp = app.add_subcommand("sharpness", "exp(z^n) sharpness table");
  auto* casebook = app.add_subcommand("casebook", "Riccati, Painleve, sharpness and kappa artifacts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (!cfg.r_list.empty()) {
      const auto rs = parse_list<double>(cfg.r_list, "--r");
      cfg.r = rs.front();
    }
    if (*characteristic_cmd) return cmd_characteristic(cfg);
    if (*check) return cmd_check(cfg, leaf);
    if (*bound) return cmd_bound(cfg, leaf);
    if (*slope) return cmd_slope(cfg, leaf);
    if (*kappa) return cmd_kappa(cfg);
    if (*sharp) return cmd_sharpness(cfg);
    if (*casebook) return cmd_casebook(cfg);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
