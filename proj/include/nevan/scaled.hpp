#pragma once

#include <cmath>
#include <complex>
#include <limits>

namespace nevan {

using cplx = std::complex<double>;

/// A complex number stored as mantissa * exp(log_scale). Used wherever
/// exp(Q(z)) factors would leave the double range before they cancel.
struct ScaledComplex {
  cplx mant{0.0, 0.0};
  double log_scale = 0.0;

  ScaledComplex() = default;
  ScaledComplex(cplx m, double s = 0.0) : mant(m), log_scale(s) { renormalize(); }

  bool is_zero() const { return mant == cplx(0.0, 0.0); }

  /// log|value|; -inf for an exact zero.
  double log_abs() const {
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    return std::log(std::abs(mant)) + log_scale;
  }

  /// The plain value; infinite components when it does not fit a double.
  cplx value() const {
    if (is_zero()) return mant;
    return mant * std::exp(log_scale);
  }

  bool fits_double() const { return is_zero() || log_abs() < 709.0; }

  void renormalize() {
    if (is_zero()) {
      log_scale = 0.0;
      return;
    }
    const double a = std::abs(mant);
    if (a > 1e150 || a < 1e-150) {
      const double l = std::log(a);
      mant /= a;
      log_scale += l;
    }
  }

  friend ScaledComplex operator*(const ScaledComplex& x, const ScaledComplex& y) {
    return {x.mant * y.mant, x.log_scale + y.log_scale};
  }
  friend ScaledComplex operator/(const ScaledComplex& x, const ScaledComplex& y) {
    return {x.mant / y.mant, x.log_scale - y.log_scale};
  }
  friend ScaledComplex operator+(const ScaledComplex& x, const ScaledComplex& y) {
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    const double s = std::max(x.log_scale, y.log_scale);
    return {x.mant * std::exp(x.log_scale - s) + y.mant * std::exp(y.log_scale - s), s};
  }
  friend ScaledComplex operator-(const ScaledComplex& x) { return {-x.mant, x.log_scale}; }
  friend ScaledComplex operator-(const ScaledComplex& x, const ScaledComplex& y) { return x + (-y); }
};

/// Integer power by repeated squaring; exact for small exponents.
inline ScaledComplex pow(ScaledComplex x, int e) {
  ScaledComplex out(cplx(1.0, 0.0));
  while (e > 0) {
    if (e & 1) out = out * x;
    x = x * x;
    e >>= 1;
  }
  return out;
}

}  // namespace nevan
