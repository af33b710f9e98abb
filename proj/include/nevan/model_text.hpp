#pragma once

#include <string>
#include <string_view>

#include "nevan/funcmodel.hpp"

namespace nevan {

/// Parses a function model. Accepted forms are arithmetic in z with complex
/// literals (a+bi), exp(poly) and tan(linear):
///   "z^3", "(z^2+1)/(z-3)", "exp(z^3)", "(z-1)*exp(2*z)", "tan(z/2 + 1)",
///   "1/(tan(z))", "(tan(z)) - (1+2i)", "(3)*(tan(z))".
/// Rational arithmetic folds into a single Rational; products and quotients
/// with exp() fold into RationalExp. Throws SyntaxError with a position, or
/// Unsupported when the expression leaves the closed family.
FunctionModel parse_model(std::string_view text);

/// Canonical text; parse_model(to_text(m)) reproduces m for parsed models.
std::string to_text(const FunctionModel& model);

/// Parses a plain polynomial or rational expression in z.
RationalFunction parse_rational(std::string_view text);

}  // namespace nevan
