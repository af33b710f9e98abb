#include "nevan/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <json.hpp>

#include "nevan/errors.hpp"

namespace nevan {

using ojson = nlohmann::ordered_json;

std::string format_sig(double x, int digits) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, digits);
  return std::string(buf, res.ptr);
}

double round_sig(double x, int digits) {
  if (!std::isfinite(x) || x == 0.0) return x == 0.0 ? 0.0 : x;
  const std::string s = format_sig(x, digits);
  double out = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), out);
  return out;
}

namespace {

ojson num(double x) {
  if (!std::isfinite(x)) return format_sig(x);
  return round_sig(x);
}

ojson nums(std::span<const double> xs) {
  ojson a = ojson::array();
  for (double x : xs) a.push_back(num(x));
  return a;
}

ojson report_object(const CheckReport& rep) {
  ojson j;
  j["name"] = rep.name;
  j["passed"] = rep.passed;
  j["points"] = rep.grid.size();
  j["min_margin"] = num(rep.min_margin);
  j["tolerance_used"] = num(rep.tolerance_used);
  j["onset_radius"] = rep.onset_radius ? num(*rep.onset_radius) : ojson(nullptr);
  j["slope_fit"] = rep.slope_fit ? num(*rep.slope_fit) : ojson(nullptr);
  j["rhs_slope_fit"] = rep.rhs_slope_fit ? num(*rep.rhs_slope_fit) : ojson(nullptr);
  j["violations"] = nums(rep.violations);
  j["notes"] = rep.notes;
  j["grid"] = nums(rep.grid);
  j["lhs"] = nums(rep.lhs);
  j["rhs"] = nums(rep.rhs);
  j["margins"] = nums(rep.margins);
  return j;
}

}  // namespace

std::string report_csv(const CheckReport& rep) {
  std::string out = "r,lhs,rhs,margin\n";
  for (size_t i = 0; i < rep.grid.size(); ++i)
    out += format_sig(rep.grid[i]) + "," + format_sig(rep.lhs[i]) + "," + format_sig(rep.rhs[i]) + "," +
           format_sig(rep.margins[i]) + "\n";
  return out;
}

std::string report_dat(const CheckReport& rep) {
  std::string out = "# " + rep.name + "\n";
  const std::pair<const char*, const std::vector<double>*> series[] = {
      {"lhs", &rep.lhs}, {"rhs", &rep.rhs}, {"margin", &rep.margins}};
  bool first = true;
  for (const auto& [label, ys] : series) {
    if (!first) out += "\n\n";
    first = false;
    out += "# r " + std::string(label) + "\n";
    for (size_t i = 0; i < rep.grid.size(); ++i) out += format_sig(rep.grid[i]) + " " + format_sig((*ys)[i]) + "\n";
  }
  return out;
}

std::string report_json(const CheckReport& rep) { return report_object(rep).dump(2) + "\n"; }

std::string suite_json(const std::string& suite, const SuiteResult& res) {
  ojson j;
  j["suite"] = suite;
  j["reports"] = res.reports.size();
  j["violations"] = res.violations();
  j["violations_above_onset"] = res.violations_above_onset();
  j["skipped"] = res.skipped;
  ojson list = ojson::array();
  for (const auto& r : res.reports) {
    ojson s;
    s["name"] = r.name;
    s["passed"] = r.passed;
    s["min_margin"] = num(r.min_margin);
    s["violations"] = r.violations.size();
    s["onset_radius"] = r.onset_radius ? num(*r.onset_radius) : ojson(nullptr);
    s["slope_fit"] = r.slope_fit ? num(*r.slope_fit) : ojson(nullptr);
    list.push_back(s);
  }
  j["summary"] = list;
  return j.dump(2) + "\n";
}

std::string table_csv(std::span<const NevanlinnaRow> rows) {
  std::string out = "r,m,N,T,quad_error\n";
  for (const auto& r : rows)
    out += format_sig(r.r) + "," + format_sig(r.m) + "," + format_sig(r.N) + "," + format_sig(r.T) + "," +
           format_sig(r.quad_error) + "\n";
  return out;
}

std::string certificate_json(const BoundCertificate& c) {
  ojson j;
  j["kind"] = to_string(c.kind);
  ojson in;
  in["r"] = num(c.r);
  in["rho"] = num(c.rho);
  in["T_rho"] = num(c.T_rho);
  if (c.sigma) in["sigma"] = num(*c.sigma);
  j["inputs"] = in;
  ojson comb;
  for (const auto& [k, v] : c.combinatorics) comb[k] = num(v);
  j["combinatorics"] = comb;
  j["main_multiplier"] = num(c.main_multiplier);
  ojson items = ojson::array();
  for (const auto& it : c.items) items.push_back({{"label", it.label}, {"value", num(it.value)}});
  j["items"] = items;
  j["total"] = num(c.total);
  j["mode"] = to_string(c.mode);
  return j.dump(2) + "\n";
}

std::string kappa_json(const KappaResult& k) {
  ojson j;
  j["alpha"] = num(k.alpha);
  j["beta"] = num(k.beta);
  j["epsilon"] = num(k.epsilon);
  j["objective"] = num(k.objective);
  j["grid"] = {{"alpha", num(k.grid_alpha)}, {"beta", num(k.grid_beta)}, {"objective", num(k.grid_objective)}};
  j["simplex_iterations"] = k.simplex_iterations;
  j["bound"] = num(kLogDerivConstant);
  j["within_bound"] = k.objective <= kLogDerivConstant;
  return j.dump(2) + "\n";
}

std::string sharpness_csv(std::span<const SharpnessRow> rows) {
  std::string out = "n,r,rho,lhs,lhs_numeric,main_term,main_term_numeric,gap,gap_numeric,target,shortfall\n";
  for (const auto& r : rows)
    out += std::to_string(r.n) + "," + format_sig(r.r) + "," + format_sig(r.rho) + "," + format_sig(r.lhs) + "," +
           format_sig(r.lhs_numeric) + "," + format_sig(r.main_term) + "," + format_sig(r.main_term_numeric) + "," +
           format_sig(r.gap) + "," + format_sig(r.gap_numeric) + "," + format_sig(r.target) + "," +
           format_sig(r.shortfall) + "\n";
  return out;
}

std::string sharpness_json(std::span<const SharpnessRow> rows) {
  ojson a = ojson::array();
  for (const auto& r : rows) {
    a.push_back({{"n", r.n},
                 {"r", num(r.r)},
                 {"rho", num(r.rho)},
                 {"lhs", num(r.lhs)},
                 {"lhs_numeric", num(r.lhs_numeric)},
                 {"main_term", num(r.main_term)},
                 {"main_term_numeric", num(r.main_term_numeric)},
                 {"gap", num(r.gap)},
                 {"gap_numeric", num(r.gap_numeric)},
                 {"target", num(r.target)},
                 {"shortfall", num(r.shortfall)}});
  }
  return a.dump(2) + "\n";
}

std::string painleve_json(const PainleveResult& p) {
  ojson j;
  j["equation"] = to_string(p.which);
  j["text"] = p.equation;
  j["n"] = p.form.n;
  j["P"] = format_diffpoly(p.form.P);
  j["Q"] = format_diffpoly(p.form.Q);
  j["sigma"] = num(p.sigma);
  j["rho_factor"] = num(p.slope.strategy.factor());
  j["sum_weights_Q"] = p.sum_weights_Q;
  j["coefficient_degrees"] = p.coefficient_degrees;
  j["slope"] = num(p.slope.slope);
  j["target"] = num(p.target);
  j["match"] = p.match;
  j["legacy_slope"] = num(p.legacy_slope.slope);
  j["legacy_printed"] = num(p.legacy_printed);
  return j.dump(2) + "\n";
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::DomainError, "cannot write " + path.string());
  out << text;
}

}  // namespace nevan
