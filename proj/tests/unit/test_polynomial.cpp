#include <doctest.h>

#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "nevan/polynomial.hpp"

using namespace nevan;
using namespace testing_helpers;

TEST_CASE("roots of z^2 + 1 are +i and -i") {
  auto roots = polynomial_roots(Polynomial({1.0, 0.0, 1.0}));
  REQUIRE(roots.size() == 2);
  std::sort(roots.begin(), roots.end(), [](auto& a, auto& b) { return a.location.imag() < b.location.imag(); });
  CHECK(cclose(roots[0].location, {0, -1}, 1e-12));
  CHECK(cclose(roots[1].location, {0, 1}, 1e-12));
}

TEST_CASE("triple root is reported once with multiplicity 3") {
  const cplx r[] = {2.0, 2.0, 2.0};
  auto roots = polynomial_roots(Polynomial::from_roots(r));
  REQUIRE(roots.size() == 1);
  CHECK(roots[0].multiplicity == 3);
  CHECK(cclose(roots[0].location, 2.0, 1e-6));
}

TEST_CASE("random degree-6 roots re-expand to the original polynomial") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<cplx> c(7);
    for (auto& x : c) x = {u(rng), u(rng)};
    const Polynomial p(c);
    std::vector<cplx> rs;
    for (const auto& root : polynomial_roots(p))
      for (int m = 0; m < root.multiplicity; ++m) rs.push_back(root.location);
    REQUIRE(rs.size() == 6);
    const Polynomial q = Polynomial::from_roots(rs, p.leading());
    for (int i = 0; i <= 6; ++i) CHECK(cclose(q[i], p[i], 1e-9));
  }
}

TEST_CASE("degree at infinity") {
  const Polynomial z = Polynomial::identity();
  const RationalFunction a(z * z, z - 1.0);
  CHECK(a.degree_at_infinity() == 1);
  CHECK(a.degree_at_infinity_plus() == 1);
  const RationalFunction b(1.0, z.pow(3));
  CHECK(b.degree_at_infinity() == -3);
  CHECK(b.degree_at_infinity_plus() == 0);
  CHECK(RationalFunction(3.5).degree_at_infinity() == 0);
}

TEST_CASE("rational arithmetic") {
  const Polynomial z = Polynomial::identity();
  const RationalFunction f(z + 1.0, z - 2.0);
  const RationalFunction g = f * f.reciprocal();
  CHECK(cclose(g(cplx(0.3, 0.7)), 1.0, 1e-14));
  const RationalFunction h = f + f - f * RationalFunction(2.0);
  CHECK(std::abs(h(cplx(1.5, -0.2))) < 1e-14);
}
