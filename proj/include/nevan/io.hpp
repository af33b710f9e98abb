#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "nevan/bounds.hpp"
#include "nevan/nevanlinna.hpp"
#include "nevan/report.hpp"
#include "nevan/verify.hpp"

namespace nevan {

/// Locale-independent text with `digits` significant digits ("%.12g" style).
std::string format_sig(double x, int digits = 12);
/// x rounded to `digits` significant digits.
double round_sig(double x, int digits = 12);

std::string report_csv(const CheckReport& rep);   // r,lhs,rhs,margin
std::string report_dat(const CheckReport& rep);   // two-column blocks: lhs, rhs, margin
std::string report_json(const CheckReport& rep);
std::string suite_json(const std::string& suite, const SuiteResult& res);
std::string table_csv(std::span<const NevanlinnaRow> rows);  // r,m,N,T,quad_error
std::string certificate_json(const BoundCertificate& c);
std::string kappa_json(const KappaResult& k);
std::string sharpness_csv(std::span<const SharpnessRow> rows);
std::string sharpness_json(std::span<const SharpnessRow> rows);
std::string painleve_json(const PainleveResult& p);

/// Writes text to path, creating parent directories.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace nevan
