#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "affinv/invariantpde.hpp"
#include "affinv/symmetry.hpp"

using namespace affinv;

namespace {

Poly V(int v) { return Poly::variable(v); }

TaylorMap surf_from_jet(const JetPoint& j) {
  TaylorMap f(j.x(), j.y(), j.order());
  f.set_coeff(0, 0, j.u());
  Rational fact[6] = {1, 1, 2, 6, 24, 120};
  for (int m = 1; m <= j.order(); ++m)
    for (int jy = 0; jy <= m; ++jy)
      f.set_coeff(m - jy, jy,
                  j.d_or_zero(m, jy) *
                      Scalar(Rational(1) / (fact[m - jy] * fact[jy])));
  return f;
}

Scalar rnd_rat(std::mt19937_64& rng) {
  return Scalar(Rational(int(rng() % 15) - 7, 1 + int(rng() % 5)));
}

AffineMap3 random_map(std::mt19937_64& rng) {
  for (;;) {
    AffineMap3 g;
    for (int i = 0; i < 3; ++i) {
      for (int k = 0; k < 3; ++k) g.M[i][k] = rnd_rat(rng);
      g.t[i] = rnd_rat(rng);
    }
    if (!g.det().is_zero()) return g;
  }
}

// random quadric graph u = a x^2 + b x y + c y^2 + d x + e y + f
TaylorMap random_quadric(std::mt19937_64& rng) {
  TaylorMap f(rnd_rat(rng), rnd_rat(rng), 3);
  TaylorMap x = TaylorMap::coordinate(0, f.x0(), f.y0(), 3);
  TaylorMap y = TaylorMap::coordinate(1, f.x0(), f.y0(), 3);
  return x * x * TaylorMap::constant(rnd_rat(rng), f.x0(), f.y0(), 3) +
         x * y * TaylorMap::constant(rnd_rat(rng), f.x0(), f.y0(), 3) +
         y * y * TaylorMap::constant(rnd_rat(rng), f.x0(), f.y0(), 3) +
         x * TaylorMap::constant(rnd_rat(rng), f.x0(), f.y0(), 3) +
         y * TaylorMap::constant(rnd_rat(rng), f.x0(), f.y0(), 3) +
         TaylorMap::constant(rnd_rat(rng), f.x0(), f.y0(), 3);
}

}  // namespace

TEST_CASE("prolongation of a translation vanishes") {
  ProlongedField p = prolong(aff3_generators()[0], 3);
  for (const auto& [w, comp] : p.components) CHECK(comp.is_zero());
}

TEST_CASE("prolongation of x d/dx by hand") {
  VectorField3 x{V(VX), Poly(), Poly()};
  ProlongedField p = prolong(x, 3);
  CHECK(p.components.at("x") == -V(VUX));
  CHECK(p.components.at("xx") == -Poly::constant(2) * V(VUXX));
  CHECK(p.components.at("xy") == -V(VUXY));
  CHECK(p.components.at("xxx") == -Poly::constant(3) * V(VUXXX));
  CHECK(p.components.at("y").is_zero());
  CHECK(p.components.at("yy").is_zero());
}

TEST_CASE("prolongation of u d/dx") {
  VectorField3 x{V(VU), Poly(), Poly()};
  ProlongedField p = prolong(x, 2);
  CHECK(p.components.at("x") == -V(VUX) * V(VUX));
  CHECK(p.components.at("y") == -V(VUX) * V(VUY));
}

TEST_CASE("the twelve affine generators") {
  const auto& gens = aff3_generators();
  REQUIRE(gens.size() == 12);
  // translations commute: constant coefficients, all brackets vanish
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const VectorField3 &va = gens[a], &vb = gens[b];
      for (const Poly* c : {&va.X1, &va.X2, &va.X0}) CHECK(c->is_constant());
      Poly bracket[3];
      const Poly* ca[3] = {&va.X1, &va.X2, &va.X0};
      const Poly* cb[3] = {&vb.X1, &vb.X2, &vb.X0};
      int vars[3] = {VX, VY, VU};
      for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k)
          bracket[i] += *ca[k] * cb[i]->derivative(vars[k]) -
                        *cb[k] * ca[i]->derivative(vars[k]);
      for (int i = 0; i < 3; ++i) CHECK(bracket[i].is_zero());
    }
}

TEST_CASE("bracket closure of the affine algebra") {
  const auto& gens = aff3_generators();
  int vars[3] = {VX, VY, VU};
  for (const auto& va : gens)
    for (const auto& vb : gens) {
      const Poly* ca[3] = {&va.X1, &va.X2, &va.X0};
      const Poly* cb[3] = {&vb.X1, &vb.X2, &vb.X0};
      for (int i = 0; i < 3; ++i) {
        Poly br;
        for (int k = 0; k < 3; ++k)
          br += *ca[k] * cb[i]->derivative(vars[k]) -
                *cb[k] * ca[i]->derivative(vars[k]);
        // affine coefficients: total degree <= 1 in (x, y, u) only
        CHECK(br.total_degree() <= 1);
        for (int v = VUX; v < kNumVars; ++v) CHECK(!br.depends_on(v));
      }
    }
}

TEST_CASE("lie derivatives of F along the generators") {
  Poly ref[12];
  ref[3] = Poly::constant(-6);
  ref[7] = Poly::constant(-6);
  ref[9] = V(VUX).scaled(-11);
  ref[10] = V(VUY).scaled(-11);
  ref[11] = Poly::constant(5);
  for (int i = 0; i < 12; ++i) {
    ApplyToF r = apply_to_F(aff3_generators()[i]);
    CHECK(r.quotient == ref[i]);
    CHECK(r.LF == r.quotient * F_poly());
  }
}

TEST_CASE("non-symmetries are rejected") {
  VectorField3 bad{V(VX) * V(VX), Poly(), Poly()};
  CHECK_THROWS_AS(apply_to_F(bad), NotDivisible);
}

TEST_CASE("jet action of the identity") {
  std::mt19937_64 rng(5);
  TaylorMap f = random_quadric(rng);
  JetPoint j = jet_of_surface(f, 3);
  CHECK(act_on_jet(AffineMap3::identity(), f, 3) == j);
}

TEST_CASE("jet action of a vertical shear") {
  std::mt19937_64 rng(7);
  TaylorMap f = random_quadric(rng);
  JetPoint j = jet_of_surface(f, 3);
  AffineMap3 g = AffineMap3::identity();
  Scalar a(3), b(Rational(-1, 2));
  g.M[2][0] = a;
  g.M[2][1] = b;
  JetPoint img = act_on_jet(g, f, 3);
  CHECK(img.d(std::string("x")) == j.d("x") + a);
  CHECK(img.d(std::string("y")) == j.d("y") + b);
  for (auto w : {"xx", "xy", "yy", "xxx", "xxy", "xyy", "yyy"})
    CHECK(img.d(w) == j.d(w));
}

TEST_CASE("jet action of the coordinate swap") {
  TaylorMap f(Scalar(0), Scalar(0), 3);
  f.set_coeff(2, 0, Scalar(Rational(1, 2)));
  f.set_coeff(0, 2, Scalar(Rational(-1, 2)));
  AffineMap3 g = AffineMap3::identity();
  g.M[0][0] = Scalar(0);
  g.M[0][1] = Scalar(1);
  g.M[1][0] = Scalar(1);
  g.M[1][1] = Scalar(0);
  JetPoint img = act_on_jet(g, f, 2);
  CHECK(img.d(std::string("xx")) == Scalar(-1));
  CHECK(img.d(std::string("yy")) == Scalar(1));
  CHECK(img.d(std::string("xy")).is_zero());
}

TEST_CASE("normalization of a jet already at the base point") {
  JetPoint j(2, Scalar(0), Scalar(0), Scalar(0));
  j.set(2, 0, Scalar(1));
  j.set(2, 2, Scalar(1));
  AffineMap3 g = normalize_to_origin(j);
  for (int i = 0; i < 3; ++i) {
    CHECK(g.t[i].is_zero());
    for (int k = 0; k < 3; ++k) CHECK(g.M[i][k] == Scalar(i == k ? 1 : 0));
  }
}

TEST_CASE("normalization of a diagonal hessian uses the square root") {
  JetPoint j(2, Scalar(0), Scalar(0), Scalar(0));
  j.set(2, 0, Scalar(4));
  j.set(2, 2, Scalar(1));
  AffineMap3 g = normalize_to_origin(j);
  CHECK(g.M[0][0] == Scalar(2));
  CHECK(g.M[0][1].is_zero());
  CHECK(g.M[1][0].is_zero());
  CHECK(g.M[1][1] == Scalar(1));
  // A = diag(2, 1) squares to the hessian
  CHECK(g.M[0][0] * g.M[0][0] == j.d("xx"));
  CHECK(g.M[1][1] * g.M[1][1] == j.d("yy"));
}

TEST_CASE("normalization lands on the fiducial jets exactly") {
  std::mt19937_64 rng(11);
  auto rint = [&] { return int(rng() % 9) - 4; };
  int done = 0;
  while (done < 40) {
    int a = rint(), b = rint(), c = rint(), d = rint();
    if (a * d - b * c == 0) continue;
    int eps = (done % 2) ? -1 : 1;
    JetPoint j(3, Scalar(rint()), Scalar(rint()), Scalar(rint()));
    j.set(1, 0, Scalar(rint()));
    j.set(1, 1, Scalar(rint()));
    j.set(2, 0, Scalar(a * a + eps * b * b));
    j.set(2, 1, Scalar(a * c + eps * b * d));
    j.set(2, 2, Scalar(c * c + eps * d * d));
    for (int i = 0; i < 4; ++i) j.set(3, i, Scalar(rint()));
    if (hessian_det(j).is_zero()) continue;
    AffineMap3 g = normalize_to_origin(j);
    JetPoint img = act_on_jet(g, surf_from_jet(j), 3);
    CHECK(img.x().is_zero());
    CHECK(img.y().is_zero());
    CHECK(img.u().is_zero());
    CHECK(img.d(std::string("x")).is_zero());
    CHECK(img.d(std::string("y")).is_zero());
    CHECK(img.d(std::string("xx")) == Scalar(1));
    CHECK(img.d(std::string("xy")).is_zero());
    CHECK(img.d(std::string("yy")) == Scalar(hessian_det(j).sign() > 0 ? 1 : -1));
    ++done;
  }
  JetPoint flat(2, Scalar(0), Scalar(0), Scalar(0));
  CHECK_THROWS_AS(normalize_to_origin(flat), DegenerateHessian);
}

TEST_CASE("gl2 pullback at simple matrices") {
  std::array<Scalar, 4> v = {Scalar(1), Scalar(2), Scalar(5), Scalar(-1)};
  std::array<std::array<Scalar, 2>, 2> id = {
      {{Scalar(1), Scalar(0)}, {Scalar(0), Scalar(1)}}};
  auto w = gl2_pullback_third(id, v);
  for (int i = 0; i < 4; ++i) CHECK(w[i] == v[i]);

  std::array<std::array<Scalar, 2>, 2> diag = {
      {{Scalar(2), Scalar(0)}, {Scalar(0), Scalar(3)}}};
  auto d = gl2_pullback_third(diag, v);
  CHECK(d[0] == v[0] / Scalar(8));
  CHECK(d[1] == v[1] / Scalar(12));
  CHECK(d[2] == v[2] / Scalar(18));
  CHECK(d[3] == v[3] / Scalar(27));

  std::array<std::array<Scalar, 2>, 2> sing = {
      {{Scalar(1), Scalar(1)}, {Scalar(1), Scalar(1)}}};
  CHECK_THROWS_AS(gl2_pullback_third(sing, v), SingularMatrix);
  std::array<std::array<Scalar, 2>, 2> asym = {
      {{Scalar(1), Scalar(2)}, {Scalar(0), Scalar(1)}}};
  CHECK_THROWS_AS(gl2_pullback_third(asym, v), std::invalid_argument);
}

TEST_CASE("gl2 pullback carries the fiber polynomial to F") {
  Poly p11 = V(VA11).pow(2) + V(VA12).pow(2);
  Poly p12 = V(VA12) * (V(VA11) + V(VA22));
  Poly p22 = V(VA12).pow(2) + V(VA22).pow(2);
  Poly lhs = F_poly()
                 .substituted(VUXX, p11)
                 .substituted(VUXY, p12)
                 .substituted(VUYY, p22);
  auto sym = gl2_pullback_third_sym();
  Poly rhs = (sym[0] - Poly::constant(3) * sym[2]).pow(2) +
             (sym[3] - Poly::constant(3) * sym[1]).pow(2);
  CHECK(rhs == lhs);
}

TEST_CASE("rank of the lifted generators") {
  std::mt19937_64 rng(13);
  JetPoint j(3, rnd_rat(rng), rnd_rat(rng), rnd_rat(rng));
  for (int m = 1; m <= 3; ++m)
    for (int jy = 0; jy <= m; ++jy) j.set(m, jy, rnd_rat(rng));
  REQUIRE(!hessian_det(j).is_zero());
  REQUIRE(!eval_F(j).is_zero());
  CHECK(lifted_rank(j) == 12);

  JetPoint jd(3, Scalar(0), Scalar(0), Scalar(0));
  jd.set(2, 0, Scalar(1));
  jd.set(2, 1, Scalar(1));
  jd.set(2, 2, Scalar(1));
  jd.set(3, 0, Scalar(2));
  jd.set(3, 1, Scalar(1));
  jd.set(3, 2, Scalar(3));
  jd.set(3, 3, Scalar(1));
  CHECK(lifted_rank(jd) < 12);
  CHECK(lifted_rank(jd) == 11);

  // minus-region jet on E with nondegenerate hessian
  JetPoint je(3, Scalar(0), Scalar(0), Scalar(0));
  je.set(2, 0, Scalar(1));
  je.set(2, 2, Scalar(-1));
  je.set(3, 0, Scalar(1));
  je.set(3, 1, Scalar(2));
  je.set(3, 2, Scalar(4));
  je.set(3, 3, Scalar(7));
  REQUIRE(eval_F(je).is_zero());
  CHECK(lifted_rank(je) == 11);
}

TEST_CASE("orbit invariance of the zero set") {
  std::mt19937_64 rng(17);
  int done = 0;
  while (done < 50) {
    AffineMap3 g = random_map(rng);
    TaylorMap f = random_quadric(rng);
    try {
      JetPoint img = act_on_jet(g, f, 3);
      CHECK(eval_F(img).is_zero());
      JetPoint img2 = act_on_jet(g, f, 2);
      if (!hessian_det(img2).is_zero())
        CHECK(classify_fiber(img2) == classify_fiber(jet_of_surface(f, 2)));
      ++done;
    } catch (const NonAdmissibleChart&) {
    }
  }
}

TEST_CASE("jet action is a group action") {
  std::mt19937_64 rng(19);
  int done = 0;
  while (done < 100) {
    AffineMap3 g1 = random_map(rng), g2 = random_map(rng);
    TaylorMap f = random_quadric(rng);
    try {
      JetPoint step1 = act_on_jet(g1, f, 3);
      JetPoint step2 = act_on_jet(g2, surf_from_jet(step1), 3);
      JetPoint direct = act_on_jet(g2.compose(g1), f, 3);
      CHECK(step2 == direct);
      ++done;
    } catch (const NonAdmissibleChart&) {
    }
  }
}
