#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "affinv/characteristics.hpp"
#include "affinv/linalg.hpp"
#include "affinv/symmetry.hpp"

using namespace affinv;

namespace {

Rational rand_rat(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-8, 8);
  std::uniform_int_distribution<int> den(1, 5);
  return Rational(num(rng), den(rng));
}

JetPoint minus_fiber_point() {
  JetPoint j(3, Scalar(0), Scalar(0), Scalar(0));
  j.set("xx", Scalar(-1));
  j.set("yy", Scalar(1));
  return j;
}

// random order-3 minus jet with an exact square root of -det
JetPoint random_minus_jet(std::mt19937_64& rng) {
  while (true) {
    Scalar uxy(rand_rat(rng)), s(rand_rat(rng)), uyy(rand_rat(rng));
    if (s.is_zero() || uyy.is_zero()) continue;
    Scalar uxx = (uxy * uxy - s * s) / uyy;  // det = -s^2
    JetPoint j(3, Scalar(rand_rat(rng)), Scalar(rand_rat(rng)),
               Scalar(rand_rat(rng)));
    j.set("x", Scalar(rand_rat(rng)));
    j.set("y", Scalar(rand_rat(rng)));
    j.set("xx", uxx);
    j.set("xy", uxy);
    j.set("yy", uyy);
    for (auto w : {"xxx", "xxy", "xyy", "yyy"}) j.set(w, Scalar(rand_rat(rng)));
    return j;
  }
}

// move the jet onto the zero set of the first factor by solving for u_xxx
void put_on_equation(JetPoint& j) {
  Scalar uyy = j.d("yy");
  j.set("xxx", Scalar(0));
  Scalar rest = eval_factors_minus(j).first;
  j.set("xxx", rest / (uyy * uyy * uyy));
}

std::vector<Scalar> to5(const ContactVector& v) {
  return {v.y1, v.y2, v.p11, v.p12, v.p22};
}

// tangent vector in the global chart (x, y, u, u_x, u_y, u_xx, u_xy, u_yy)
std::vector<Scalar> to8(const ContactVector& v, const JetPoint& j) {
  return {v.y1,
          v.y2,
          j.d("x") * v.y1 + j.d("y") * v.y2,
          j.d("xx") * v.y1 + j.d("xy") * v.y2,
          j.d("xy") * v.y1 + j.d("yy") * v.y2,
          v.p11,
          v.p12,
          v.p22};
}

TaylorMap surf_from_jet(const JetPoint& j) {
  TaylorMap f(j.x(), j.y(), 6);
  f.set_coeff(0, 0, j.u());
  f.set_coeff(1, 0, j.d("x"));
  f.set_coeff(0, 1, j.d("y"));
  f.set_coeff(2, 0, j.d("xx") / Scalar(2));
  f.set_coeff(1, 1, j.d("xy"));
  f.set_coeff(0, 2, j.d("yy") / Scalar(2));
  return f;
}

std::vector<Scalar> jet_coords8(const JetPoint& j) {
  return {j.x(),     j.y(),     j.u(),     j.d("x"),
          j.d("y"),  j.d("xx"), j.d("xy"), j.d("yy")};
}

JetPoint jet_from_coords8(const std::vector<Scalar>& c) {
  JetPoint j(2, c[0], c[1], c[2]);
  j.set("x", c[3]);
  j.set("y", c[4]);
  j.set("xx", c[5]);
  j.set("xy", c[6]);
  j.set("yy", c[7]);
  return j;
}

// pushforward of a contact vector through the prolonged action of g,
// by an exact-step central difference
std::vector<Scalar> push_forward(const AffineMap3& g, const JetPoint& j,
                                 const ContactVector& v) {
  Scalar h(Rational(1, 1000000));
  auto dir = to8(v, j);
  auto base = jet_coords8(j);
  std::vector<Scalar> plus = base, minus = base;
  for (int i = 0; i < 8; ++i) {
    plus[i] += h * dir[i];
    minus[i] -= h * dir[i];
  }
  JetPoint jp = act_on_jet(g, surf_from_jet(jet_from_coords8(plus)), 2);
  JetPoint jm = act_on_jet(g, surf_from_jet(jet_from_coords8(minus)), 2);
  auto cp = jet_coords8(jp), cm = jet_coords8(jm);
  std::vector<Scalar> out(8);
  for (int i = 0; i < 8; ++i) out[i] = (cp[i] - cm[i]) / (Scalar(2) * h);
  return out;
}

}  // namespace

TEST_CASE("characteristic line at the minus fiber point") {
  JetPoint j = minus_fiber_point();
  j.set("xxy", Scalar(2));
  j.set("xyy", Scalar(0));
  j.set("yyy", Scalar(-1));
  j.set("xxx", Scalar(-5));  // u_xxx + 3 u_xxy + 3 u_xyy + u_yyy = 0
  CHECK(eval_factors_minus(j).first.is_zero());
  ContactVector v = char_line(j);
  CHECK(v.y1 == Scalar(1));
  CHECK(v.y2 == Scalar(1));
  CHECK(v.p11 == j.d("xxx") + j.d("xxy"));
  CHECK(v.p12 == j.d("xxy") + j.d("xyy"));
  CHECK(v.p22 == j.d("xyy") + j.d("yyy"));

  // scaling the third-order part keeps the jet on the equation and the
  // base direction of the line unchanged
  JetPoint k = j;
  for (auto w : {"xxx", "xxy", "xyy", "yyy"}) k.set(w, Scalar(7) * j.d(w));
  ContactVector w = char_line(k);
  CHECK(w.y1 == v.y1);
  CHECK(w.y2 == v.y2);
  CHECK(w.p11 == Scalar(7) * v.p11);
  CHECK(w.p22 == Scalar(7) * v.p22);
}

TEST_CASE("characteristic line rejects bad inputs") {
  JetPoint j = minus_fiber_point();
  j.set("xxx", Scalar(1));  // factor value 1, off the equation
  CHECK_THROWS_AS(char_line(j), NotOnEquation);

  JetPoint p(3, Scalar(0), Scalar(0), Scalar(0));
  p.set("xx", Scalar(1));
  p.set("yy", Scalar(1));
  CHECK_THROWS_AS(char_line(p), WrongRegion);

  JetPoint low(2, Scalar(0), Scalar(0), Scalar(0));
  low.set("xx", Scalar(-1));
  low.set("yy", Scalar(1));
  CHECK_THROWS_AS(char_line(low), OrderTooLow);
}

TEST_CASE("characteristic line matches the displayed formula") {
  std::mt19937_64 rng(501);
  for (int t = 0; t < 60; ++t) {
    JetPoint j = random_minus_jet(rng);
    put_on_equation(j);
    ContactVector v = char_line(j);
    Scalar s = (-hessian_det(j)).sqrt();
    Scalar a = s * j.d("yy");
    Scalar b = -(s * j.d("xy") + hessian_det(j));
    CHECK(v.y1 == a);
    CHECK(v.y2 == b);
    CHECK(v.p11 == a * j.d("xxx") + b * j.d("xxy"));
    CHECK(v.p12 == a * j.d("xxy") + b * j.d("xyy"));
    CHECK(v.p22 == a * j.d("xyy") + b * j.d("yyy"));

    // the line satisfies the defining equations and lies in the distribution
    auto eqs = char_var_equations(j, v);
    CHECK(eqs[0].is_zero());
    CHECK(eqs[1].is_zero());
    auto basis = distribution_V(j);
    Matrix m = {to5(basis[0]), to5(basis[1]), to5(basis[2]), to5(v)};
    CHECK(matrix_rank(m) == 3);
  }
}

TEST_CASE("distribution at the minus fiber point") {
  JetPoint a2 = minus_fiber_point();
  auto basis = distribution_V(a2);
  // b = -1: spans <D_x + D_y, -2 d/du_xx + d/du_xy, -d/du_xx + d/du_yy>
  CHECK(basis[0].y1 == Scalar(-1));
  CHECK(basis[0].y2 == Scalar(-1));
  CHECK(basis[0].p11.is_zero());
  CHECK(basis[1].p11 == Scalar(-2));
  CHECK(basis[1].p12 == Scalar(1));
  CHECK(basis[1].p22.is_zero());
  CHECK(basis[2].p11 == Scalar(-1));
  CHECK(basis[2].p12.is_zero());
  CHECK(basis[2].p22 == Scalar(1));

  JetPoint p(2, Scalar(0), Scalar(0), Scalar(0));
  p.set("xx", Scalar(1));
  p.set("yy", Scalar(1));
  CHECK_THROWS_AS(distribution_V(p), WrongRegion);
}

TEST_CASE("distribution basis solves the defining equations with rank 3") {
  std::mt19937_64 rng(502);
  for (int t = 0; t < 60; ++t) {
    JetPoint j = random_minus_jet(rng);
    for (bool branch : {false, true}) {
      auto basis = distribution_V(j, branch);
      Matrix m;
      for (const auto& v : basis) {
        auto eqs = char_var_equations(j, v, branch);
        CHECK(eqs[0].is_zero());
        CHECK(eqs[1].is_zero());
        m.push_back(to5(v));
      }
      CHECK(matrix_rank(m) == 3);
    }
  }
  // float-mode jet
  JetPoint f(2, Scalar(0), Scalar(0), Scalar(0));
  f.set("xx", Scalar::from_double(0.3));
  f.set("xy", Scalar::from_double(-1.1));
  f.set("yy", Scalar::from_double(0.7));
  Matrix m;
  for (const auto& v : distribution_V(f)) m.push_back(to5(v));
  CHECK(matrix_rank(m) == 3);
}

TEST_CASE("recovered equation at the minus fiber point") {
  JetPoint a2 = minus_fiber_point();
  std::mt19937_64 rng(503);
  for (int t = 0; t < 40; ++t) {
    std::array<Scalar, 4> th = {Scalar(rand_rat(rng)), Scalar(rand_rat(rng)),
                                Scalar(rand_rat(rng)), Scalar(rand_rat(rng))};
    Scalar det = recover_pde(a2, th);
    CHECK(det == th[0] + Scalar(3) * th[1] + Scalar(3) * th[2] + th[3]);
  }
}

TEST_CASE("recovered equation vanishes exactly on the factor zero set") {
  std::mt19937_64 rng(504);
  for (int t = 0; t < 60; ++t) {
    JetPoint j = random_minus_jet(rng);
    put_on_equation(j);
    std::array<Scalar, 4> th = {j.d("xxx"), j.d("xxy"), j.d("xyy"),
                                j.d("yyy")};
    CHECK(recover_pde(j, th).is_zero());
  }
}

TEST_CASE("the symbolic determinant is a unit multiple of the first factor") {
  SqrtExt unit = recover_pde_unit();
  CHECK(unit.re == -Poly::variable(VUYY));
  CHECK(unit.im.is_zero());
  CHECK(recover_pde_symbolic() == unit * minus_factor(1));
}

TEST_CASE("recovered equation and the minus factors share zero sets") {
  std::mt19937_64 rng(505);
  int on_eq = 0;
  for (int t = 0; t < 500; ++t) {
    JetPoint j = random_minus_jet(rng);
    if (t % 3 == 0) {
      put_on_equation(j);
      ++on_eq;
    }
    auto [f1, f2] = eval_factors_minus(j);
    std::array<Scalar, 4> th = {j.d("xxx"), j.d("xxy"), j.d("xyy"),
                                j.d("yyy")};
    Scalar uyy = j.d("yy");
    CHECK(recover_pde(j, th) == -uyy * f1);
    CHECK(recover_pde(j, th, true) == uyy * f2);
    CHECK(recover_pde(j, th).is_zero() == f1.is_zero());
  }
  CHECK(on_eq > 100);
}

TEST_CASE("the symbol of the first factor is rank one") {
  JetPoint a2 = minus_fiber_point();
  a2.set("xxx", Scalar(1));
  RankOneCheck rc = symbol_rank_one_check(a2);
  CHECK(rc.c1 == rc.c2);  // factor proportional to eta1 + eta2
  CHECK(!rc.c1.is_zero());
  CHECK(rc.residual.value() < 1e-12);

  std::mt19937_64 rng(506);
  for (int t = 0; t < 100; ++t) {
    JetPoint j = random_minus_jet(rng);
    RankOneCheck r = symbol_rank_one_check(j);
    CHECK(r.residual.value() < 1e-9);
    // the factor is proportional to the displayed linear form
    Scalar s = (-hessian_det(j)).sqrt();
    Scalar a = s * j.d("yy");
    Scalar b = -(s * j.d("xy") + hessian_det(j));
    CHECK(std::abs((r.c1 * b - r.c2 * a).value()) < 1e-8);
  }

  JetPoint p(3, Scalar(0), Scalar(0), Scalar(0));
  p.set("xx", Scalar(1));
  p.set("yy", Scalar(1));
  CHECK_THROWS_AS(symbol_rank_one_check(p), WrongRegion);
}

TEST_CASE("the distribution is invariant under the affine action") {
  std::mt19937_64 rng(507);
  int done = 0;
  while (done < 12) {
    AffineMap3 g;
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) g.M[r][c] = Scalar(rand_rat(rng));
      g.t[r] = Scalar(rand_rat(rng));
    }
    if (g.det().is_zero()) continue;
    JetPoint j = random_minus_jet(rng);
    JetPoint image;
    try {
      image = act_on_jet(g, surf_from_jet(project(j, 2)), 2);
    } catch (const NonAdmissibleChart&) {
      continue;
    }
    REQUIRE(classify_fiber(image) == Region::minus);
    Matrix pushed;
    for (const auto& v : distribution_V(project(j, 2)))
      pushed.push_back(push_forward(g, project(j, 2), v));
    // the action permutes the two branch distributions: the pushed span
    // coincides with exactly one of them
    auto rank_with = [&](bool branch) {
      Matrix m = pushed;
      for (const auto& v : distribution_V(image, branch))
        m.push_back(to8(v, image));
      Matrix mf;
      for (auto& row : m) {
        std::vector<Scalar> fr;
        double scale = 0;
        for (auto& e : row) scale = std::max(scale, std::abs(e.value()));
        REQUIRE(scale > 0);
        for (auto& e : row) fr.push_back(Scalar::from_double(e.value() / scale));
        mf.push_back(fr);
      }
      return matrix_rank(mf, 1e-8);
    };
    int r1 = rank_with(false), r2 = rank_with(true);
    CHECK((r1 == 3) != (r2 == 3));
    ++done;
  }
}
