#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nevan/polynomial.hpp"
#include "nevan/scaled.hpp"

namespace nevan {

enum class ModelKind { Rational, RationalExp, TanLinear, Reciprocal, Shifted, Scaled };

struct PoleRecord {
  cplx location;
  int multiplicity = 1;
};

/// The points z_k = (u0 + k*pi - b) / a, k in Z. Poles and a-points of
/// tan(a z + b) form such lattices.
struct Lattice {
  cplx a, b, u0;
  cplx point(long k) const;
};

/// A possibly infinite discrete point set with multiplicities.
struct PointSet {
  std::vector<PoleRecord> finite;
  std::optional<Lattice> lattice;

  /// Points with |z| <= r sorted by modulus then argument. Throws
  /// BoundaryPole if a point lies within boundary_tol of the circle.
  std::vector<PoleRecord> in_disc(double r, double boundary_tol) const;
  double nearest_distance(cplx z) const;
  /// Moduli of all points with |z| <= r_max.
  std::vector<double> moduli_up_to(double r_max) const;
  bool empty() const { return finite.empty() && !lattice; }
};

struct EvalOptions {
  int max_order = 8;
  double pole_guard = 1e-9;  // relative to max(1, |z|)
};

/// A member of the closed family of meromorphic test functions:
///   Rational       p/q
///   RationalExp    (p/q) * exp(Q)
///   TanLinear      tan(a z + b), a != 0
///   Reciprocal     1/f
///   Shifted        f - c
///   Scaled         c * f
/// Pole and a-point sets are exact (roots of polynomials or tan lattices).
/// Immutable; copies share the node.
class FunctionModel {
 public:
  static FunctionModel rational(RationalFunction r);
  static FunctionModel rational_exp(RationalFunction r, Polynomial exponent);
  static FunctionModel exp_power(int n);
  static FunctionModel tan_linear(cplx a, cplx b);
  static FunctionModel reciprocal(const FunctionModel& inner);
  static FunctionModel shifted(const FunctionModel& inner, cplx c);
  static FunctionModel scaled(const FunctionModel& inner, cplx c);

  ModelKind kind() const;
  const RationalFunction& rational_part() const;
  const Polynomial& exponent() const;
  cplx tan_a() const;
  cplx tan_b() const;
  const FunctionModel& inner() const;
  cplx constant() const;

  /// Poles of the model. Cached after first use.
  const PointSet& poles() const;
  /// Solutions of f(z) = value. Throws Unsupported outside the enumerable cases.
  PointSet a_points(cplx value) const;

  friend bool operator==(const FunctionModel& a, const FunctionModel& b);

  struct Node;

 private:
  explicit FunctionModel(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
  friend struct FactoredJet factored_jet(const FunctionModel&, cplx, int);
};

/// f^(k)(z) = common * values[k]. The common factor carries exp(Q(z)) for
/// exponential models so that ratios of derivatives never see its scale.
struct FactoredJet {
  ScaledComplex common{cplx(1.0, 0.0)};
  std::vector<ScaledComplex> values;
};

FactoredJet factored_jet(const FunctionModel& model, cplx z, int order);

/// Derivatives f, f', ..., f^(order) at z in overflow-safe form. No pole guard.
std::vector<ScaledComplex> jet(const FunctionModel& model, cplx z, int order);

/// Throws PoleProximity when z is within the evaluation guard of a pole.
void check_pole_distance(const FunctionModel& model, cplx z, const EvalOptions& opts = {});
cplx eval(const FunctionModel& model, cplx z, const EvalOptions& opts = {});
/// log|f(z)| in log scale; +-inf on an exact pole or zero.
double log_abs(const FunctionModel& model, cplx z);
cplx eval_derivative(const FunctionModel& model, cplx z, int order, const EvalOptions& opts = {});
/// log|f^(k)(z) / f^(j)(z)| without forming either derivative in plain doubles.
double log_abs_derivative_ratio(const FunctionModel& model, cplx z, int k, int j);

std::vector<PoleRecord> poles_in_disc(const FunctionModel& model, double r);
std::vector<PoleRecord> zeros_in_disc(const FunctionModel& model, cplx a, double r);

/// Boundary tolerance used by the disc queries.
inline double boundary_tolerance(double r) { return 1e-9 * std::max(1.0, r); }

/// tan(u), stable for large |Im u|.
cplx stable_tan(cplx u);

}  // namespace nevan
