#pragma once
#include <doctest.h>

#include <cmath>
#include <complex>

#include "nevan/errors.hpp"

namespace testing_helpers {

inline bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }
inline bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }
inline bool cclose(std::complex<double> a, std::complex<double> b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

template <class F>
nevan::ErrorCode error_code_of(F&& f) {
  try {
    f();
  } catch (const nevan::Error& e) {
    return e.code();
  }
  FAIL("expected a nevan::Error");
  return nevan::ErrorCode::InvalidModel;
}

}  // namespace testing_helpers
