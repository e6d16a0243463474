#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "affinv/affgeom.hpp"
#include "affinv/invariantpde.hpp"

using namespace affinv;

namespace {

JetPoint quadric_jet(int sign_y, int order = 3) {
  TaylorMap f(Scalar(0), Scalar(0), order);
  f.set_coeff(2, 0, Scalar(Rational(1, 2)));
  f.set_coeff(0, 2, Scalar(Rational(sign_y, 2)));
  return jet_of_surface(f, order);
}

Scalar rnd_rat(std::mt19937_64& rng) {
  return Scalar(Rational(int(rng() % 15) - 7, 1 + int(rng() % 5)));
}

JetPoint random_jet(std::mt19937_64& rng, int order = 3) {
  JetPoint j(order, rnd_rat(rng), rnd_rat(rng), rnd_rat(rng));
  for (int m = 1; m <= order; ++m)
    for (int jy = 0; jy <= m; ++jy) j.set(m, jy, rnd_rat(rng));
  return j;
}

Scalar f2(const JetPoint& j, int a, int b) { return j.d_or_zero(2, a + b); }
Scalar f3(const JetPoint& j, int a, int b, int c) {
  return j.d_or_zero(3, a + b + c);
}

// the cubic form of a transversal field, one index triple at a time
Scalar cubic_oracle(const JetPoint& j, const TransversalField& xi, int k,
                    int i, int jj) {
  Scalar fx = j.d_or_zero(1, 0), fy = j.d_or_zero(1, 1);
  Scalar B = Scalar(1) / (xi.xi3 - xi.xi1 * fx - xi.xi2 * fy);
  Scalar xiv[2] = {xi.xi1, xi.xi2};
  Scalar c = B * f3(j, i, jj, k);
  for (int m = 0; m < 2; ++m)
    c += B * B * xiv[m] *
         (f2(j, m, jj) * f2(j, k, i) + f2(j, i, m) * f2(j, k, jj) +
          f2(j, k, m) * f2(j, i, jj));
  return c;
}

}  // namespace

TEST_CASE("euclidean forms of the fiducial quadric") {
  EuclidForms e = euclid_forms(quadric_jet(+1));
  CHECK(e.first.c[0] == Scalar(1));
  CHECK(e.first.c[1].is_zero());
  CHECK(e.first.c[2] == Scalar(1));
  CHECK(e.normal[0].is_zero());
  CHECK(e.normal[1].is_zero());
  CHECK(e.normal[2] == Scalar(1));
  CHECK(e.second.c[0] == Scalar(1));
  CHECK(e.second.c[1].is_zero());
  CHECK(e.second.c[2] == Scalar(1));
}

TEST_CASE("euclidean forms of the flat plane") {
  JetPoint j(2, Scalar(0), Scalar(0), Scalar(0));
  EuclidForms e = euclid_forms(j);
  for (int i = 0; i < 3; ++i) CHECK(e.second.c[i].is_zero());
}

TEST_CASE("euclidean forms of u = x y at (1,1)") {
  TaylorMap x = TaylorMap::coordinate(0, Scalar(1), Scalar(1), 3);
  TaylorMap y = TaylorMap::coordinate(1, Scalar(1), Scalar(1), 3);
  EuclidForms e = euclid_forms(jet_of_surface(x * y, 2));
  CHECK(e.first.c[0] == Scalar(2));  // 1 + f_x^2 with f_x = 1
  CHECK(e.first.c[1] == Scalar(1));
  CHECK(e.first.c[2] == Scalar(2));
  double n = std::sqrt(3.0);
  CHECK(e.normal[0].value() == doctest::Approx(-1 / n));
  CHECK(e.normal[1].value() == doctest::Approx(-1 / n));
  CHECK(e.normal[2].value() == doctest::Approx(1 / n));
  CHECK(e.second.c[0].value() == doctest::Approx(0.0));
  CHECK(e.second.c[1].value() == doctest::Approx(1 / n));
  CHECK(e.second.c[2].value() == doctest::Approx(0.0));
}

TEST_CASE("constant vertical transversal field") {
  std::mt19937_64 rng(3);
  JetPoint j = random_jet(rng);
  std::array<std::array<Scalar, 3>, 2> zero{};
  TransversalField xi{Scalar(0), Scalar(0), Scalar(1), zero};
  TransversalData t = transversal_data(j, xi);
  CHECK(t.A == Scalar(1));
  for (int k = 0; k < 2; ++k)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) CHECK(t.Gamma[k][a][b].is_zero());
  REQUIRE(t.tau.has_value());
  CHECK((*t.tau)[0].is_zero());
  CHECK((*t.tau)[1].is_zero());
  for (int s = 0; s <= 3; ++s) CHECK(t.C.c[s] == j.d_or_zero(3, s));
}

TEST_CASE("euclidean normal of the quadric gives the second fundamental form") {
  JetPoint j = quadric_jet(+1);
  EuclidForms e = euclid_forms(j);
  TransversalField xi{e.normal[0], e.normal[1], e.normal[2], std::nullopt};
  TransversalData t = transversal_data(j, xi);
  CHECK(t.h.c[0] == Scalar(1));
  CHECK(t.h.c[1].is_zero());
  CHECK(t.h.c[2] == Scalar(1));
}

TEST_CASE("cubic form is fully symmetric and matches the oracle") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    JetPoint j = random_jet(rng);
    TransversalField xi{rnd_rat(rng), rnd_rat(rng), rnd_rat(rng), std::nullopt};
    Scalar A = xi.xi3 - xi.xi1 * j.d_or_zero(1, 0) - xi.xi2 * j.d_or_zero(1, 1);
    if (A.is_zero()) {
      CHECK_THROWS_AS(transversal_data(j, xi), DegenerateTransversal);
      continue;
    }
    TransversalData t = transversal_data(j, xi);
    for (int k = 0; k < 2; ++k)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          Scalar v = cubic_oracle(j, xi, k, a, b);
          CHECK(v == cubic_oracle(j, xi, a, k, b));
          CHECK(v == cubic_oracle(j, xi, b, a, k));
          CHECK(v == t.C.c[k + a + b]);
        }
  }
}

TEST_CASE("affine normal of the quadrics is vertical") {
  for (int sg : {+1, -1}) {
    TransversalField xi = affine_normal(quadric_jet(sg));
    CHECK(xi.xi1.is_zero());
    CHECK(xi.xi2.is_zero());
    CHECK(xi.xi3 == Scalar(1));
  }
}

TEST_CASE("affine normal of u = (x^2+y^2)/2 + x^3 at the origin") {
  TaylorMap f(Scalar(0), Scalar(0), 3);
  f.set_coeff(2, 0, Scalar(Rational(1, 2)));
  f.set_coeff(0, 2, Scalar(Rational(1, 2)));
  f.set_coeff(3, 0, Scalar(1));
  TransversalField xi = affine_normal(jet_of_surface(f, 3));
  CHECK(xi.xi1 == Scalar(Rational(-3, 2)));
  CHECK(xi.xi2.is_zero());
  CHECK(xi.xi3 == Scalar(1));
}

TEST_CASE("affine normal rejects degenerate hessians") {
  JetPoint j(3, Scalar(0), Scalar(0), Scalar(0));
  j.set(2, 0, Scalar(1));
  CHECK_THROWS_AS(affine_normal(j), DegenerateHessian);
}

TEST_CASE("blaschke data of the fiducial quadric") {
  BlaschkeData b = blaschke_and_pick(quadric_jet(+1));
  CHECK(b.rho == Scalar(1));
  CHECK(b.hA.c[0] == Scalar(1));
  CHECK(b.hA.c[1].is_zero());
  CHECK(b.hA.c[2] == Scalar(1));
  for (int s = 0; s <= 3; ++s) CHECK(b.CA.c[s].is_zero());
  CHECK(b.pick.is_zero());
}

TEST_CASE("pick invariant vanishes on a sphere branch") {
  Scalar x0(Rational(1, 10)), y0(Rational(1, 5));
  TaylorMap x = TaylorMap::coordinate(0, x0, y0, 3);
  TaylorMap y = TaylorMap::coordinate(1, x0, y0, 3);
  TaylorMap inner = TaylorMap::constant(Scalar(1), x0, y0, 3) - x * x - y * y;
  TaylorMap u = inner.to_float().sqrt();
  BlaschkeData b = blaschke_and_pick(jet_of_surface(u, 3));
  CHECK(std::abs(b.pick.value()) < 1e-9);
}

TEST_CASE("pick invariant at an exact jet with det Hess = 16") {
  JetPoint j(3, Scalar(1), Scalar(-2), Scalar(3));
  j.set(1, 0, Scalar(2));
  j.set(1, 1, Scalar(-1));
  j.set(2, 0, Scalar(5));
  j.set(2, 1, Scalar(3));
  j.set(2, 2, Scalar(5));
  j.set(3, 0, Scalar(1));
  j.set(3, 1, Scalar(-2));
  j.set(3, 2, Scalar(4));
  j.set(3, 3, Scalar(2));
  REQUIRE(hessian_det(j) == Scalar(16));
  BlaschkeData b = blaschke_and_pick(j);
  CHECK(b.rho == Scalar(Rational(1, 2)));

  // independent contraction with explicit index loops over raw derivatives
  Scalar rho = b.rho;
  Scalar r = hessian_det(j);
  // D(det Hess) along the surface, by hand
  Scalar dr[2] = {
      f3(j, 0, 0, 0) * f2(j, 1, 1) + f2(j, 0, 0) * f3(j, 0, 1, 1) -
          Scalar(2) * f2(j, 0, 1) * f3(j, 0, 0, 1),
      f3(j, 0, 0, 1) * f2(j, 1, 1) + f2(j, 0, 0) * f3(j, 1, 1, 1) -
          Scalar(2) * f2(j, 0, 1) * f3(j, 0, 1, 1)};
  Scalar drho[2];
  for (int k = 0; k < 2; ++k)
    drho[k] = Scalar(Rational(-1, 4)) * rho * dr[k] / r;
  auto CA = [&](int a, int b2, int c) {
    return rho * f3(j, a, b2, c) + f2(j, a, b2) * drho[c] +
           f2(j, b2, c) * drho[a] + f2(j, a, c) * drho[b2];
  };
  Scalar det_hA = rho * rho * r;
  auto hinv = [&](int a, int b2) {
    if (a == 0 && b2 == 0) return rho * f2(j, 1, 1) / det_hA;
    if (a == 1 && b2 == 1) return rho * f2(j, 0, 0) / det_hA;
    return -rho * f2(j, 0, 1) / det_hA;
  };
  Scalar pick(0);
  for (int i1 = 0; i1 < 2; ++i1)
    for (int i2 = 0; i2 < 2; ++i2)
      for (int j1 = 0; j1 < 2; ++j1)
        for (int j2 = 0; j2 < 2; ++j2)
          for (int k1 = 0; k1 < 2; ++k1)
            for (int k2 = 0; k2 < 2; ++k2)
              pick += hinv(i1, i2) * hinv(j1, j2) * hinv(k1, k2) *
                      CA(i1, j1, k1) * CA(i2, j2, k2);
  CHECK(b.pick == pick);
  CHECK(b.pick == Scalar(Rational(31693, 8192)));
}

TEST_CASE("affine normal has vanishing tau") {
  std::mt19937_64 rng(23);
  int tested = 0;
  while (tested < 20) {
    JetPoint j = random_jet(rng, 4);
    if (hessian_det(j).is_zero()) continue;
    TransversalField xi = affine_normal_frame(j);
    TransversalData t = transversal_data(j, xi);
    REQUIRE(t.tau.has_value());
    CHECK(std::abs((*t.tau)[0].value()) < 1e-9);
    CHECK(std::abs((*t.tau)[1].value()) < 1e-9);
    ++tested;
  }
}

TEST_CASE("transversal cubic of the affine normal equals the blaschke cubic") {
  std::mt19937_64 rng(29);
  int tested = 0;
  while (tested < 50) {
    JetPoint j = random_jet(rng);
    if (hessian_det(j).is_zero()) continue;
    TransversalData t = transversal_data(j, affine_normal(j));
    BlaschkeData b = blaschke_and_pick(j);
    for (int s = 0; s <= 3; ++s) {
      if (b.rho.exact())
        CHECK(t.C.c[s] == b.CA.c[s]);
      else
        CHECK(std::abs(t.C.c[s].value() - b.CA.c[s].value()) < 1e-9);
    }
    ++tested;
  }
}

TEST_CASE("symbolic pick invariant is proportional to F") {
  GradedRho ps = pick_symbolic();
  REQUIRE(ps.parts().size() == 1);
  auto it = ps.parts().begin();
  CHECK(it->first == -19);
  Poly expect =
      (GradedRho::r() * GradedRho::r() * F_poly()).scaled(Rational(1, 4));
  CHECK(it->second == expect);
}
