#pragma once

#include <span>
#include <string>
#include <vector>

#include "nevan/scaled.hpp"

namespace nevan {

/// Dense complex polynomial in z, lowest degree first. Exact zero leading
/// coefficients are trimmed; the zero polynomial is stored as {0}.
class Polynomial {
 public:
  Polynomial() : c_{cplx(0.0, 0.0)} {}
  explicit Polynomial(std::vector<cplx> coeffs);
  Polynomial(cplx constant) : c_{constant} {}  // NOLINT: constants convert implicitly
  Polynomial(double constant) : c_{cplx(constant, 0.0)} {}  // NOLINT

  static Polynomial monomial(cplx coeff, int degree);
  static Polynomial identity() { return monomial(1.0, 1); }
  /// lead * prod (z - r_i)
  static Polynomial from_roots(std::span<const cplx> roots, cplx lead = 1.0);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.size() == 1 && c_[0] == cplx(0.0, 0.0); }
  bool is_constant() const { return c_.size() == 1; }
  cplx leading() const { return c_.back(); }
  cplx operator[](int i) const { return i < static_cast<int>(c_.size()) ? c_[i] : cplx(0.0, 0.0); }
  const std::vector<cplx>& coeffs() const { return c_; }

  cplx operator()(cplx z) const;
  /// Overflow-safe evaluation for large |z| (reversed Horner in 1/z).
  ScaledComplex eval_scaled(cplx z) const;
  /// sum |c_i| |z|^i, the natural size of p(z) for residual tests.
  double magnitude_scale(cplx z) const;

  Polynomial derivative() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(cplx s);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator*(Polynomial a, cplx s) { return a *= s; }
  friend Polynomial operator*(cplx s, Polynomial a) { return a *= s; }
  friend Polynomial operator-(Polynomial a) { return a *= cplx(-1.0, 0.0); }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  Polynomial pow(int e) const;

 private:
  void trim();
  std::vector<cplx> c_;
};

struct RootOptions {
  double tol_root = 1e-12;        // residual bound relative to magnitude_scale
  double cluster_radius = 1e-8;   // relative derivative test for multiplicities
  int max_iterations = 2000;
};

struct Root {
  cplx location;
  int multiplicity = 1;
};

/// All complex roots with multiplicities. Simultaneous (Aberth-Ehrlich)
/// iteration, then merging of clustered approximations into multiple roots.
/// Throws RootFindingFailure if the iteration or the residual test fails.
std::vector<Root> polynomial_roots(const Polynomial& p, const RootOptions& opts = {});

/// p/q with q not identically zero.
class RationalFunction {
 public:
  RationalFunction() : num_(0.0), den_(1.0) {}
  RationalFunction(Polynomial num) : num_(std::move(num)), den_(1.0) {}  // NOLINT
  RationalFunction(cplx c) : num_(c), den_(1.0) {}  // NOLINT
  RationalFunction(double c) : num_(c), den_(1.0) {}  // NOLINT
  /// Throws DomainError for a zero denominator or when numerator and
  /// denominator share a root.
  RationalFunction(Polynomial num, Polynomial den);

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

  cplx operator()(cplx z) const { return num_(z) / den_(z); }
  ScaledComplex eval_scaled(cplx z) const { return num_.eval_scaled(z) / den_.eval_scaled(z); }

  /// deg(numerator) - deg(denominator).
  int degree_at_infinity() const { return num_.degree() - den_.degree(); }
  int degree_at_infinity_plus() const { return std::max(0, degree_at_infinity()); }
  /// |leading(numerator) / leading(denominator)|
  double leading_ratio() const { return std::abs(num_.leading() / den_.leading()); }

  RationalFunction reciprocal() const { return {den_, num_}; }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a);
  friend bool operator==(const RationalFunction&, const RationalFunction&) = default;

 private:
  struct Unchecked {};
  RationalFunction(Polynomial num, Polynomial den, Unchecked);
  void fold_constant_denominator();
  Polynomial num_;
  Polynomial den_;
};

/// Text forms that reparse exactly (shortest round-trip doubles).
std::string format_double(double x);
std::string format_complex(cplx c);
std::string format_polynomial(const Polynomial& p);
std::string format_rational(const RationalFunction& r);

}  // namespace nevan
