#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "nevan/funcmodel.hpp"
#include "nevan/polynomial.hpp"

namespace nevan {

/// Exponents (j0, j1, ..., jn) of w, w', ..., w^(n). Trailing zeros are
/// dropped; the constant term is (0).
class MultiIndex {
 public:
  MultiIndex() : j_{0} {}
  explicit MultiIndex(std::vector<int> exponents);

  const std::vector<int>& exponents() const { return j_; }
  int degree() const;  // j0 + j1 + ... + jn
  int weight() const;  // j1 + 2 j2 + ... + n jn
  /// Highest derivative order present; 0 for w-only and constant terms.
  int order() const { return static_cast<int>(j_.size()) - 1; }
  bool is_constant() const { return j_.size() == 1 && j_[0] == 0; }

  MultiIndex operator+(const MultiIndex& o) const;
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<int> j_;
};

int term_degree(const MultiIndex& idx);
int term_weight(const MultiIndex& idx);
/// |lambda|; the same sum as the degree.
int term_abs(const MultiIndex& idx);

/// Terms listed by decreasing degree, then weight, then exponents.
struct IndexOrder {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

struct DiffTerm {
  RationalFunction coeff;
  MultiIndex index;
};

/// Sum of a_lambda(z) w^j0 (w')^j1 ... with rational coefficients; like
/// terms merged, zero terms dropped.
class DiffPolynomial {
 public:
  DiffPolynomial() = default;
  static DiffPolynomial constant(RationalFunction c);
  static DiffPolynomial derivative(int order);  // w^(order)

  /// Adds c * index; returns false if this cancelled an existing term.
  bool add_term(const RationalFunction& c, const MultiIndex& index);

  std::vector<DiffTerm> terms() const;
  size_t card() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  /// Coefficient of the w-free term; zero if absent.
  RationalFunction constant_term() const;
  int max_order() const;

  DiffPolynomial operator+(const DiffPolynomial& o) const;
  DiffPolynomial operator-(const DiffPolynomial& o) const;
  DiffPolynomial operator*(const DiffPolynomial& o) const;
  DiffPolynomial scaled(const RationalFunction& c) const;
  friend bool operator==(const DiffPolynomial&, const DiffPolynomial&) = default;

 private:
  std::map<MultiIndex, RationalFunction, IndexOrder> terms_;
};

int poly_degree(const DiffPolynomial& p);   // max over terms
int poly_weight(const DiffPolynomial& p);   // max over terms
int sum_degrees(const DiffPolynomial& p);
int sum_weights(const DiffPolynomial& p);
/// Sum of di+(a_lambda) over the coefficients.
int coefficient_degree_sum(const DiffPolynomial& p);
int coefficient_degree_max(const DiffPolynomial& p);

using ConstantBindings = std::map<std::string, cplx, std::less<>>;

struct ParsedDiffPoly {
  DiffPolynomial poly;
  std::vector<std::string> warnings;  // ZeroTerm notes for cancelled terms
};

/// Grammar: sums and products of coefficients (rational in z, with z, i,
/// pi and bound constant names) and factors w, w', w'', ..., w^(k), each
/// optionally raised to ^int. "w^(2)" is the second derivative, "w^2" a power.
ParsedDiffPoly parse_diffpoly_ex(std::string_view text, const ConstantBindings& bindings = {});
DiffPolynomial parse_diffpoly(std::string_view text, const ConstantBindings& bindings = {});

std::string format_multi_index(const MultiIndex& idx);  // "w*w''", "1" for the constant
std::string format_diffpoly(const DiffPolynomial& p);

/// f^n P(z,f) = Q(z,f) with every term of Q of degree at most n.
struct ClunieForm {
  int n = 1;
  DiffPolynomial P;
  DiffPolynomial Q;
};

/// Throws DegreeViolation naming every term of Q with degree above n.
ClunieForm validate_clunie_split(int n, DiffPolynomial P, DiffPolynomial Q);

/// P(z, f) at z from the model's derivative jet.
cplx evaluate_diffpoly(const DiffPolynomial& p, const FunctionModel& model, cplx z);
/// Same value in overflow-safe form, plus the largest term modulus in log scale.
ScaledComplex evaluate_diffpoly_scaled(const DiffPolynomial& p, const FunctionModel& model, cplx z,
                                       double* log_largest_term = nullptr);

}  // namespace nevan
