#include "nevan/funcmodel.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "nevan/errors.hpp"

namespace nevan {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr int kPrecomputedOrder = 8;

// (p/q) e^Q has k-th derivative N_k / q^(k+1) * e^Q with
// N_{k+1} = N_k' q - (k+1) N_k q' + N_k Q' q.
std::vector<Polynomial> exp_rational_numerators(const RationalFunction& r, const Polynomial& expo,
                                                int order) {
  const Polynomial& q = r.denominator();
  const Polynomial dq = q.derivative();
  const Polynomial dQ = expo.derivative();
  std::vector<Polynomial> n{r.numerator()};
  for (int k = 0; k < order; ++k) {
    const Polynomial& nk = n.back();
    n.push_back(nk.derivative() * q - nk * dq * cplx(k + 1.0, 0.0) + nk * dQ * q);
  }
  return n;
}

// tan^(k)(a z + b) = T_k(tan(a z + b)) with T_0 = t, T_{k+1} = a T_k'(t) (1 + t^2).
std::vector<Polynomial> tan_polynomials(cplx a, int order) {
  const Polynomial one_plus_t2({1.0, 0.0, 1.0});
  std::vector<Polynomial> t{Polynomial::identity()};
  for (int k = 0; k < order; ++k) t.push_back(t.back().derivative() * one_plus_t2 * a);
  return t;
}

std::vector<PoleRecord> to_records(const std::vector<Root>& roots) {
  std::vector<PoleRecord> out;
  out.reserve(roots.size());
  for (const auto& r : roots) out.push_back({r.location, r.multiplicity});
  return out;
}

PointSet roots_of(const Polynomial& p) {
  PointSet s;
  if (p.degree() >= 1) s.finite = to_records(polynomial_roots(p));
  return s;
}

bool is_unit_imag(cplx v) {
  return std::abs(v - cplx(0.0, 1.0)) < 1e-14 || std::abs(v + cplx(0.0, 1.0)) < 1e-14;
}
}  // namespace

struct FunctionModel::Node {
  ModelKind kind;
  RationalFunction rat;
  Polynomial expo;
  std::vector<Polynomial> derivative_polys;  // N_k or T_k
  cplx a{0.0, 0.0}, b{0.0, 0.0};
  cplx constant{0.0, 0.0};
  std::optional<FunctionModel> inner;

  mutable std::once_flag poles_once;
  mutable PointSet poles_cache;
};

cplx Lattice::point(long k) const { return (u0 + static_cast<double>(k) * kPi - b) / a; }

std::vector<PoleRecord> PointSet::in_disc(double r, double boundary_tol) const {
  std::vector<PoleRecord> out;
  auto consider = [&](const PoleRecord& p) {
    const double m = std::abs(p.location);
    if (std::abs(m - r) <= boundary_tol)
      throw Error(ErrorCode::BoundaryPole,
                  "point " + format_complex(p.location) + " on |z| = " + format_double(r));
    if (m < r) out.push_back(p);
  };
  for (const auto& p : finite) consider(p);
  if (lattice) {
    const cplx w = lattice->u0 - lattice->b;
    const double big = (r + boundary_tol) * std::abs(lattice->a) * (1.0 + 1e-12);
    if (std::abs(w.imag()) <= big) {
      const double half = std::sqrt(big * big - w.imag() * w.imag());
      const long k0 = static_cast<long>(std::ceil((-w.real() - half) / kPi)) - 1;
      const long k1 = static_cast<long>(std::floor((-w.real() + half) / kPi)) + 1;
      for (long k = k0; k <= k1; ++k) consider({lattice->point(k), 1});
    }
  }
  std::sort(out.begin(), out.end(), [](const PoleRecord& x, const PoleRecord& y) {
    const double rx = std::abs(x.location), ry = std::abs(y.location);
    if (rx != ry) return rx < ry;
    return std::arg(x.location) < std::arg(y.location);
  });
  return out;
}

double PointSet::nearest_distance(cplx z) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : finite) best = std::min(best, std::abs(z - p.location));
  if (lattice) {
    const cplx v = lattice->a * z + lattice->b - lattice->u0;
    const long k = std::lround(v.real() / kPi);
    for (long d = -1; d <= 1; ++d) best = std::min(best, std::abs(z - lattice->point(k + d)));
  }
  return best;
}

std::vector<double> PointSet::moduli_up_to(double r_max) const {
  std::vector<double> out;
  for (const auto& p : finite)
    if (std::abs(p.location) <= r_max) out.push_back(std::abs(p.location));
  if (lattice) {
    PointSet only_lattice;
    only_lattice.lattice = lattice;
    // A tiny boundary tolerance; a point exactly on the circle still counts.
    try {
      for (const auto& p : only_lattice.in_disc(r_max, 0.0)) out.push_back(std::abs(p.location));
    } catch (const Error&) {
      out.push_back(r_max);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------

FunctionModel FunctionModel::rational(RationalFunction r) {
  auto n = std::make_shared<Node>();
  n->kind = ModelKind::Rational;
  n->rat = std::move(r);
  n->expo = Polynomial(0.0);
  n->derivative_polys = exp_rational_numerators(n->rat, n->expo, kPrecomputedOrder);
  return FunctionModel(std::move(n));
}

FunctionModel FunctionModel::rational_exp(RationalFunction r, Polynomial exponent) {
  auto n = std::make_shared<Node>();
  n->kind = ModelKind::RationalExp;
  n->rat = std::move(r);
  n->expo = std::move(exponent);
  n->derivative_polys = exp_rational_numerators(n->rat, n->expo, kPrecomputedOrder);
  return FunctionModel(std::move(n));
}

FunctionModel FunctionModel::exp_power(int n) {
  return rational_exp(RationalFunction(1.0), Polynomial::monomial(1.0, n));
}

FunctionModel FunctionModel::tan_linear(cplx a, cplx b) {
  if (a == cplx(0.0, 0.0)) throw Error(ErrorCode::InvalidModel, "tan(a z + b) needs a != 0");
  auto n = std::make_shared<Node>();
  n->kind = ModelKind::TanLinear;
  n->a = a;
  n->b = b;
  n->derivative_polys = tan_polynomials(a, kPrecomputedOrder);
  return FunctionModel(std::move(n));
}

FunctionModel FunctionModel::reciprocal(const FunctionModel& inner) {
  auto n = std::make_shared<Node>();
  n->kind = ModelKind::Reciprocal;
  n->inner = inner;
  return FunctionModel(std::move(n));
}

FunctionModel FunctionModel::shifted(const FunctionModel& inner, cplx c) {
  auto n = std::make_shared<Node>();
  n->kind = ModelKind::Shifted;
  n->inner = inner;
  n->constant = c;
  return FunctionModel(std::move(n));
}

FunctionModel FunctionModel::scaled(const FunctionModel& inner, cplx c) {
  if (c == cplx(0.0, 0.0)) throw Error(ErrorCode::InvalidModel, "scale factor must be nonzero");
  auto n = std::make_shared<Node>();
  n->kind = ModelKind::Scaled;
  n->inner = inner;
  n->constant = c;
  return FunctionModel(std::move(n));
}

ModelKind FunctionModel::kind() const { return node_->kind; }
const RationalFunction& FunctionModel::rational_part() const { return node_->rat; }
const Polynomial& FunctionModel::exponent() const { return node_->expo; }
cplx FunctionModel::tan_a() const { return node_->a; }
cplx FunctionModel::tan_b() const { return node_->b; }
cplx FunctionModel::constant() const { return node_->constant; }

const FunctionModel& FunctionModel::inner() const {
  if (!node_->inner) throw Error(ErrorCode::InvalidModel, "model has no inner model");
  return *node_->inner;
}

const PointSet& FunctionModel::poles() const {
  std::call_once(node_->poles_once, [this] {
    PointSet s;
    switch (node_->kind) {
      case ModelKind::Rational:
      case ModelKind::RationalExp:
        s = roots_of(node_->rat.denominator());
        break;
      case ModelKind::TanLinear:
        s.lattice = Lattice{node_->a, node_->b, cplx(kPi / 2.0, 0.0)};
        break;
      case ModelKind::Reciprocal:
        s = inner().a_points(0.0);
        break;
      case ModelKind::Shifted:
      case ModelKind::Scaled:
        s = inner().poles();
        break;
    }
    node_->poles_cache = std::move(s);
  });
  return node_->poles_cache;
}

PointSet FunctionModel::a_points(cplx value) const {
  const Node& n = *node_;
  switch (n.kind) {
    case ModelKind::Rational:
    case ModelKind::RationalExp: {
      Polynomial p = n.rat.numerator();
      if (n.kind == ModelKind::RationalExp && n.expo.degree() >= 1) {
        if (value != cplx(0.0, 0.0))
          throw Error(ErrorCode::Unsupported, "a-points of R exp(Q) are only enumerable for a = 0");
        if (p.is_zero()) throw Error(ErrorCode::Unsupported, "identically zero model");
        return roots_of(p);
      }
      if (n.kind == ModelKind::RationalExp) p *= std::exp(n.expo[0]);
      const Polynomial shifted = p - n.rat.denominator() * value;
      if (shifted.is_zero())
        throw Error(ErrorCode::Unsupported, "model is identically equal to " + format_complex(value));
      return roots_of(shifted);
    }
    case ModelKind::TanLinear: {
      PointSet s;
      if (!is_unit_imag(value)) s.lattice = Lattice{n.a, n.b, std::atan(value)};
      return s;
    }
    case ModelKind::Reciprocal:
      if (value == cplx(0.0, 0.0)) return inner().poles();
      return inner().a_points(1.0 / value);
    case ModelKind::Shifted:
      return inner().a_points(value + n.constant);
    case ModelKind::Scaled:
      return inner().a_points(value / n.constant);
  }
  return {};
}

bool operator==(const FunctionModel& x, const FunctionModel& y) {
  if (x.node_ == y.node_) return true;
  const auto& a = *x.node_;
  const auto& b = *y.node_;
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ModelKind::Rational:
      return a.rat == b.rat;
    case ModelKind::RationalExp:
      return a.rat == b.rat && a.expo == b.expo;
    case ModelKind::TanLinear:
      return a.a == b.a && a.b == b.b;
    case ModelKind::Reciprocal:
      return x.inner() == y.inner();
    case ModelKind::Shifted:
    case ModelKind::Scaled:
      return a.constant == b.constant && x.inner() == y.inner();
  }
  return false;
}

// ---------------------------------------------------------------------------

cplx stable_tan(cplx u) {
  const double x = u.real(), y = u.imag();
  const double e = std::exp(-2.0 * std::abs(y));
  const double one_minus_e = -std::expm1(-2.0 * std::abs(y));
  const double s = std::sin(x), c = std::cos(x);
  const double den = one_minus_e * one_minus_e + 4.0 * e * c * c;
  const double re = 4.0 * e * s * c / den;
  const double im = std::copysign(one_minus_e * (1.0 + e) / den, y);
  return {re, im};
}

namespace {
double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}
}  // namespace

FactoredJet factored_jet(const FunctionModel& model, cplx z, int order) {
  const FunctionModel::Node& n = *model.node_;
  FactoredJet fj;
  auto& out = fj.values;
  out.reserve(static_cast<size_t>(order) + 1);
  switch (n.kind) {
    case ModelKind::Rational:
    case ModelKind::RationalExp: {
      const auto& polys = order <= kPrecomputedOrder
                              ? n.derivative_polys
                              : exp_rational_numerators(n.rat, n.expo, order);
      if (n.kind == ModelKind::RationalExp) {
        const cplx qz = n.expo(z);
        if (!std::isfinite(qz.real()) || !std::isfinite(qz.imag()))
          throw Error(ErrorCode::Overflow, "exponent polynomial overflows at " + format_complex(z));
        fj.common = ScaledComplex(std::polar(1.0, qz.imag()), qz.real());
      }
      const ScaledComplex qv = n.rat.denominator().eval_scaled(z);
      ScaledComplex qpow = qv;
      for (int k = 0; k <= order; ++k) {
        out.push_back(polys[k].eval_scaled(z) / qpow);
        qpow = qpow * qv;
      }
      break;
    }
    case ModelKind::TanLinear: {
      const auto polys = order <= kPrecomputedOrder ? n.derivative_polys : tan_polynomials(n.a, order);
      const cplx t = stable_tan(n.a * z + n.b);
      for (int k = 0; k <= order; ++k) out.push_back(polys[k].eval_scaled(t));
      break;
    }
    case ModelKind::Reciprocal: {
      // The recurrence is homogeneous of degree -1, so the common factor inverts.
      const FactoredJet f = factored_jet(model.inner(), z, order);
      fj.common = ScaledComplex(cplx(1.0, 0.0)) / f.common;
      const ScaledComplex inv = ScaledComplex(cplx(1.0, 0.0)) / f.values[0];
      out.push_back(inv);
      for (int k = 1; k <= order; ++k) {
        ScaledComplex acc;
        for (int i = 1; i <= k; ++i)
          acc = acc + ScaledComplex(cplx(binomial(k, i), 0.0)) * f.values[i] * out[k - i];
        out.push_back(-(acc * inv));
      }
      break;
    }
    case ModelKind::Shifted: {
      out = jet(model.inner(), z, order);
      out[0] = out[0] - ScaledComplex(n.constant);
      break;
    }
    case ModelKind::Scaled: {
      fj = factored_jet(model.inner(), z, order);
      fj.common = fj.common * ScaledComplex(n.constant);
      break;
    }
  }
  return fj;
}

std::vector<ScaledComplex> jet(const FunctionModel& model, cplx z, int order) {
  FactoredJet fj = factored_jet(model, z, order);
  for (auto& v : fj.values) v = v * fj.common;
  return std::move(fj.values);
}

double log_abs(const FunctionModel& model, cplx z) {
  switch (model.kind()) {
    case ModelKind::Reciprocal:
      return -log_abs(model.inner(), z);
    case ModelKind::Scaled:
      return std::log(std::abs(model.constant())) + log_abs(model.inner(), z);
    case ModelKind::Rational:
    case ModelKind::RationalExp: {
      const auto& r = model.rational_part();
      double v = r.numerator().eval_scaled(z).log_abs() - r.denominator().eval_scaled(z).log_abs();
      if (model.kind() == ModelKind::RationalExp) v += model.exponent()(z).real();
      return v;
    }
    default:
      return jet(model, z, 0)[0].log_abs();
  }
}

void check_pole_distance(const FunctionModel& model, cplx z, const EvalOptions& opts) {
  const PointSet* poles = nullptr;
  try {
    poles = &model.poles();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Unsupported) throw;
    return;
  }
  const double d = poles->nearest_distance(z);
  if (d <= opts.pole_guard * std::max(1.0, std::abs(z)))
    throw Error(ErrorCode::PoleProximity,
                "z = " + format_complex(z) + " is within " + format_double(d) + " of a pole");
}

namespace {

cplx checked_value(const ScaledComplex& v, cplx z) {
  if (!v.fits_double())
    throw Error(ErrorCode::Overflow, "value at " + format_complex(z) + " exceeds the double range");
  return v.value();
}
}  // namespace

cplx eval(const FunctionModel& model, cplx z, const EvalOptions& opts) {
  check_pole_distance(model, z, opts);
  return checked_value(jet(model, z, 0)[0], z);
}

cplx eval_derivative(const FunctionModel& model, cplx z, int order, const EvalOptions& opts) {
  if (order < 0 || order > opts.max_order)
    throw Error(ErrorCode::OrderTooLarge, "derivative order " + std::to_string(order) +
                                              " exceeds the maximum " + std::to_string(opts.max_order));
  check_pole_distance(model, z, opts);
  return checked_value(jet(model, z, order)[order], z);
}

double log_abs_derivative_ratio(const FunctionModel& model, cplx z, int k, int j) {
  const auto d = factored_jet(model, z, std::max(k, j)).values;
  return d[k].log_abs() - d[j].log_abs();
}

std::vector<PoleRecord> poles_in_disc(const FunctionModel& model, double r) {
  if (!(r > 0.0)) throw Error(ErrorCode::DomainError, "radius must be positive");
  return model.poles().in_disc(r, boundary_tolerance(r));
}

std::vector<PoleRecord> zeros_in_disc(const FunctionModel& model, cplx a, double r) {
  if (!(r > 0.0)) throw Error(ErrorCode::DomainError, "radius must be positive");
  return model.a_points(a).in_disc(r, boundary_tolerance(r));
}

}  // namespace nevan
