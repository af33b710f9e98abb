#include "nevan/polynomial.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>

#include "nevan/errors.hpp"

namespace nevan {

Polynomial::Polynomial(std::vector<cplx> coeffs) : c_(std::move(coeffs)) {
  if (c_.empty()) c_.push_back(cplx(0.0, 0.0));
  trim();
}

void Polynomial::trim() {
  while (c_.size() > 1 && c_.back() == cplx(0.0, 0.0)) c_.pop_back();
}

Polynomial Polynomial::monomial(cplx coeff, int degree) {
  std::vector<cplx> c(static_cast<size_t>(degree) + 1, cplx(0.0, 0.0));
  c.back() = coeff;
  return Polynomial(std::move(c));
}

Polynomial Polynomial::from_roots(std::span<const cplx> roots, cplx lead) {
  Polynomial p(lead);
  for (cplx r : roots) p *= Polynomial({-r, cplx(1.0, 0.0)});
  return p;
}

cplx Polynomial::operator()(cplx z) const {
  cplx acc(0.0, 0.0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

ScaledComplex Polynomial::eval_scaled(cplx z) const {
  const double r = std::abs(z);
  const int n = degree();
  if (r <= 1.0 || n * std::log(r) < 300.0) return ScaledComplex((*this)(z));
  // p(z) = z^n * sum_i c_{n-i} w^i with w = 1/z
  const cplx w = 1.0 / z;
  cplx acc(0.0, 0.0);
  for (const cplx& c : c_) acc = acc * w + c;
  const cplx phase = std::polar(1.0, n * std::arg(z));
  return ScaledComplex(acc * phase, n * std::log(r));
}

double Polynomial::magnitude_scale(cplx z) const {
  const double r = std::abs(z);
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * r + std::abs(*it);
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return Polynomial();
  std::vector<cplx> d(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<double>(i);
  return Polynomial(std::move(d));
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), cplx(0.0, 0.0));
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), cplx(0.0, 0.0));
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  if (is_zero() || o.is_zero()) {
    c_.assign(1, cplx(0.0, 0.0));
    return *this;
  }
  std::vector<cplx> out(c_.size() + o.c_.size() - 1, cplx(0.0, 0.0));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) out[i + j] += c_[i] * o.c_[j];
  c_ = std::move(out);
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(cplx s) {
  for (auto& c : c_) c *= s;
  trim();
  return *this;
}

Polynomial Polynomial::pow(int e) const {
  Polynomial out(1.0);
  for (int i = 0; i < e; ++i) out *= *this;
  return out;
}

namespace {

struct Derivs {
  cplx p, dp;
};

Derivs horner2(const std::vector<cplx>& c, cplx z) {
  cplx p(0.0, 0.0), dp(0.0, 0.0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    dp = dp * z + p;
    p = p * z + *it;
  }
  return {p, dp};
}

// Aberth-Ehrlich iteration on a polynomial with nonzero constant term.
std::vector<cplx> aberth(const Polynomial& p, int max_iterations) {
  const int n = p.degree();
  const auto& c = p.coeffs();
  const double radius = std::pow(std::abs(c.front() / c.back()), 1.0 / n);
  std::vector<cplx> z(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k)
    z[k] = std::polar(radius, 2.0 * std::numbers::pi * k / n + 0.4);

  std::vector<bool> done(static_cast<size_t>(n), false);
  for (int it = 0; it < max_iterations; ++it) {
    bool all_done = true;
    for (int k = 0; k < n; ++k) {
      if (done[k]) continue;
      const auto [pk, dpk] = horner2(c, z[k]);
      if (pk == cplx(0.0, 0.0)) {
        done[k] = true;
        continue;
      }
      const cplx ratio = pk / dpk;
      cplx s(0.0, 0.0);
      for (int j = 0; j < n; ++j)
        if (j != k) s += 1.0 / (z[k] - z[j]);
      const cplx corr = ratio / (1.0 - ratio * s);
      if (!std::isfinite(corr.real()) || !std::isfinite(corr.imag())) continue;
      z[k] -= corr;
      if (std::abs(corr) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(z[k]))
        done[k] = true;
      else
        all_done = false;
    }
    if (all_done) break;
  }
  return z;
}

void newton_polish(const Polynomial& p, cplx& z, int steps) {
  const auto& c = p.coeffs();
  double best = std::abs(p(z));
  for (int s = 0; s < steps && best > 0.0; ++s) {
    const auto [pz, dpz] = horner2(c, z);
    if (dpz == cplx(0.0, 0.0)) return;
    const cplx cand = z - pz / dpz;
    const double res = std::abs(p(cand));
    if (!(res < best)) return;
    z = cand;
    best = res;
  }
}

bool accept_cluster(const Polynomial& p, cplx& center, int m, double radius) {
  std::vector<Polynomial> derivs{p};
  for (int j = 1; j < m; ++j) derivs.push_back(derivs.back().derivative());
  newton_polish(derivs.back(), center, 8);
  for (int j = 0; j < m; ++j) {
    const double scale = derivs[j].magnitude_scale(center);
    if (std::abs(derivs[j](center)) > radius * scale) return false;
  }
  return true;
}

}  // namespace

std::vector<Root> polynomial_roots(const Polynomial& p, const RootOptions& opts) {
  if (p.degree() < 1) throw Error(ErrorCode::DomainError, "polynomial_roots needs degree >= 1");
  std::vector<Root> out;
  const auto& c = p.coeffs();
  size_t zeros = 0;
  while (zeros < c.size() && c[zeros] == cplx(0.0, 0.0)) ++zeros;
  if (zeros > 0) out.push_back({cplx(0.0, 0.0), static_cast<int>(zeros)});
  const Polynomial q(std::vector<cplx>(c.begin() + static_cast<std::ptrdiff_t>(zeros), c.end()));
  const int n = q.degree();
  if (n >= 1) {
    std::vector<cplx> approx;
    if (n == 1) {
      approx.push_back(-q[0] / q[1]);
    } else {
      approx = aberth(q, opts.max_iterations);
    }

    // Tentative clusters by proximity, merged only if the derivative test passes.
    const size_t m = approx.size();
    std::vector<size_t> parent(m);
    std::iota(parent.begin(), parent.end(), size_t{0});
    auto find = [&](size_t i) {
      while (parent[i] != i) i = parent[i] = parent[parent[i]];
      return i;
    };
    for (size_t i = 0; i < m; ++i)
      for (size_t j = i + 1; j < m; ++j) {
        const double scale = std::max(1.0, std::max(std::abs(approx[i]), std::abs(approx[j])));
        if (std::abs(approx[i] - approx[j]) <= 1e-2 * scale) parent[find(i)] = find(j);
      }
    std::vector<std::vector<cplx>> groups(m);
    for (size_t i = 0; i < m; ++i) groups[find(i)].push_back(approx[i]);
    for (auto& g : groups) {
      if (g.empty()) continue;
      if (g.size() > 1) {
        cplx center(0.0, 0.0);
        for (cplx z : g) center += z;
        center /= static_cast<double>(g.size());
        if (accept_cluster(q, center, static_cast<int>(g.size()), opts.cluster_radius)) {
          out.push_back({center, static_cast<int>(g.size())});
          continue;
        }
      }
      for (cplx z : g) {
        newton_polish(q, z, 3);
        out.push_back({z, 1});
      }
    }
  }

  for (const auto& r : out) {
    const double res = std::abs(p(r.location));
    if (!std::isfinite(res) || res > opts.tol_root * p.magnitude_scale(r.location))
      throw Error(ErrorCode::RootFindingFailure,
                  "residual " + format_double(res) + " at root " + format_complex(r.location));
  }
  std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) {
    const double ra = std::abs(a.location), rb = std::abs(b.location);
    if (ra != rb) return ra < rb;
    return std::arg(a.location) < std::arg(b.location);
  });
  return out;
}

// ---------------------------------------------------------------------------

namespace {

bool shares_root(const Polynomial& num, const Polynomial& den) {
  if (den.degree() < 1 || num.is_zero()) return false;
  for (const auto& r : polynomial_roots(den)) {
    if (std::abs(num(r.location)) <= 1e-8 * num.magnitude_scale(r.location)) return true;
  }
  return false;
}

// Cancels roots shared by numerator and denominator, rebuilding both from
// their remaining roots.
std::pair<Polynomial, Polynomial> cancel_common(const Polynomial& num, const Polynomial& den) {
  if (!shares_root(num, den)) return {num, den};
  auto nr = polynomial_roots(num);
  auto dr = polynomial_roots(den);
  for (auto& a : nr)
    for (auto& b : dr) {
      const double scale = std::max(1.0, std::abs(a.location));
      if (a.multiplicity > 0 && b.multiplicity > 0 &&
          std::abs(a.location - b.location) <= 1e-6 * scale) {
        const int k = std::min(a.multiplicity, b.multiplicity);
        a.multiplicity -= k;
        b.multiplicity -= k;
      }
    }
  auto expand = [](const std::vector<Root>& roots) {
    std::vector<cplx> flat;
    for (const auto& r : roots)
      for (int i = 0; i < r.multiplicity; ++i) flat.push_back(r.location);
    return flat;
  };
  const auto nflat = expand(nr);
  const auto dflat = expand(dr);
  return {Polynomial::from_roots(nflat, num.leading()), Polynomial::from_roots(dflat, den.leading())};
}

}  // namespace

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error(ErrorCode::DomainError, "rational function with zero denominator");
  if (shares_root(num_, den_))
    throw Error(ErrorCode::DomainError, "numerator and denominator share a root: " +
                                            format_rational(RationalFunction(num_, den_, Unchecked{})));
  fold_constant_denominator();
}

RationalFunction::RationalFunction(Polynomial num, Polynomial den, Unchecked)
    : num_(std::move(num)), den_(std::move(den)) {}

void RationalFunction::fold_constant_denominator() {
  if (den_.is_constant() && den_[0] != cplx(1.0, 0.0)) {
    num_ *= 1.0 / den_[0];
    den_ = Polynomial(1.0);
  }
  if (num_.is_zero()) den_ = Polynomial(1.0);
}

namespace {
RationalFunction make_reduced(const Polynomial& num, const Polynomial& den) {
  if (den.is_zero()) throw Error(ErrorCode::DomainError, "division by the zero rational function");
  auto [n, d] = cancel_common(num, den);
  return RationalFunction(std::move(n), std::move(d));
}
}  // namespace

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.den_ == b.den_) return make_reduced(a.num_ + b.num_, a.den_);
  return make_reduced(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator-(const RationalFunction& a) {
  return RationalFunction(-a.num_, a.den_, RationalFunction::Unchecked{});
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return make_reduced(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.is_zero()) throw Error(ErrorCode::DomainError, "division by the zero rational function");
  return make_reduced(a.num_ * b.den_, a.den_ * b.num_);
}

// ---------------------------------------------------------------------------

std::string format_double(double x) {
  if (x == 0.0) return "0";  // folds -0
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string format_complex(cplx c) {
  if (c.imag() == 0.0) return format_double(c.real());
  std::string s = "(" + format_double(c.real());
  s += c.imag() < 0.0 ? "-" : "+";
  s += format_double(std::abs(c.imag())) + "i)";
  return s;
}

std::string format_polynomial(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  const auto& c = p.coeffs();
  for (int k = p.degree(); k >= 0; --k) {
    cplx a = c[k];
    if (a == cplx(0.0, 0.0)) continue;
    bool negative = false;
    if (a.imag() == 0.0 && a.real() < 0.0) {
      negative = true;
      a = -a;
    }
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    std::string mono = k == 0 ? "" : (k == 1 ? "z" : "z^" + std::to_string(k));
    if (k == 0) {
      out += format_complex(a);
    } else if (a == cplx(1.0, 0.0)) {
      out += mono;
    } else {
      out += format_complex(a) + "*" + mono;
    }
  }
  return out;
}

std::string format_rational(const RationalFunction& r) {
  if (r.is_polynomial()) return "(" + format_polynomial(r.numerator()) + ")";
  return "(" + format_polynomial(r.numerator()) + ")/(" + format_polynomial(r.denominator()) + ")";
}

}  // namespace nevan
