#include "affinv/compat.hpp"

#include <cmath>

#include "affinv/invariantpde.hpp"
#include "affinv/linalg.hpp"

namespace affinv {

namespace {

Poly V(int v) { return Poly::variable(v); }

Poly uyy_pow(int k) { return V(VUYY).pow(k); }

Poly det_poly() { return V(VUXX) * V(VUYY) - V(VUXY) * V(VUXY); }

Poly cond4_poly() {
  return V(VUXY) * V(VUYY) * V(VUYYYY) -
         Poly::constant(2) * V(VUXY) * V(VUYYY).pow(2) +
         Poly::constant(2) * V(VUXYY) * V(VUYY) * V(VUYYY) -
         V(VUXYYY) * V(VUYY).pow(2);
}

Poly cond5_poly() {
  return Poly::constant(9) * V(VUYY).pow(2) * V(VUYYYYY) -
         Poly::constant(45) * V(VUYY) * V(VUYYY) * V(VUYYYY) +
         Poly::constant(40) * V(VUYYY).pow(3);
}

Poly cond4x_poly() {
  return V(VUXY) * V(VUXX) * V(VUXXXX) -
         Poly::constant(2) * V(VUXY) * V(VUXXX).pow(2) +
         Poly::constant(2) * V(VUXXY) * V(VUXX) * V(VUXXX) -
         V(VUXXXY) * V(VUXX).pow(2);
}

Poly cond5x_poly() {
  return Poly::constant(9) * V(VUXX).pow(2) * V(VUXXXXX) -
         Poly::constant(45) * V(VUXX) * V(VUXXX) * V(VUXXXX) +
         Poly::constant(40) * V(VUXXX).pow(3);
}

// substitute var := val into a plain polynomial
RatFuncY subst_var(const Poly& p, int var, const RatFuncY& val) {
  int m = p.degree_in(var);
  if (m == 0) return RatFuncY(p, 0);
  // bucket the terms by the exponent of var
  std::vector<Poly> bucket(m + 1);
  for (const auto& [mono, c] : p.terms()) {
    Mono rest = mono;
    int e = rest[var];
    rest[var] = 0;
    bucket[e].add_term(rest, c);
  }
  Poly out;
  for (int e = 0; e <= m; ++e) {
    if (bucket[e].is_zero()) continue;
    out += bucket[e] * val.num.pow(e) * uyy_pow(val.k * (m - e));
  }
  return RatFuncY(out, val.k * m);
}

// eliminate every solved variable appearing in f
RatFuncY close_over(RatFuncY f, const std::map<int, RatFuncY>& solved) {
  bool again = true;
  while (again) {
    again = false;
    for (const auto& [var, val] : solved) {
      if (!f.num.depends_on(var)) continue;
      RatFuncY s = subst_var(f.num, var, val);
      f.num = s.num;
      f.k += s.k;
      again = true;
    }
  }
  f.reduce();
  return f;
}

RatFuncY total_d(const RatFuncY& f, char dir) {
  int bound = std::max(f.num.max_jet_order(), 2) + 1;
  Poly dnum = total_derivative(f.num, dir, bound);
  Poly duyy = dir == 'x' ? V(VUXYY) : V(VUYYY);
  Poly num = dnum * V(VUYY) - duyy * f.num.scaled(Rational(f.k));
  return RatFuncY(num, f.k + 1);
}

RatFuncY conv_uxxx() {
  Poly num = -V(VUXX) * (Poly::constant(2) * V(VUXY) * V(VUYYY) -
                         Poly::constant(3) * V(VUXYY) * V(VUYY));
  return RatFuncY(num, 2);
}

RatFuncY conv_uxxy() {
  Poly num = V(VUXX) * V(VUYY) * V(VUYYY) -
             Poly::constant(4) * V(VUXY).pow(2) * V(VUYYY) +
             Poly::constant(6) * V(VUXY) * V(VUXYY) * V(VUYY);
  return RatFuncY(num.scaled(Rational(1, 3)), 2);
}

RatFuncY cond4_solved() {
  // u_xyyy from the fourth-order condition
  Poly num = V(VUXY) * V(VUYY) * V(VUYYYY) -
             Poly::constant(2) * V(VUXY) * V(VUYYY).pow(2) +
             Poly::constant(2) * V(VUXYY) * V(VUYY) * V(VUYYY);
  return RatFuncY(num, 2);
}

RatFuncY cond5_solved() {
  // u_yyyyy from the fifth-order condition
  Poly num = Poly::constant(45) * V(VUYY) * V(VUYYY) * V(VUYYYY) -
             Poly::constant(40) * V(VUYYY).pow(3);
  return RatFuncY(num.scaled(Rational(1, 9)), 2);
}

const ProlongedSystem& system_instance() {
  static const ProlongedSystem sys = build_prolonged_system();
  return sys;
}

TaylorMap affine_xy(const std::array<Scalar, 4>& c, const Scalar& x0,
                    const Scalar& y0, int order) {
  // c0 + c1 x + c2 y + c3 x y
  TaylorMap x = TaylorMap::coordinate(0, x0, y0, order);
  TaylorMap y = TaylorMap::coordinate(1, x0, y0, order);
  auto cons = [&](const Scalar& v) {
    return TaylorMap::constant(v, x0, y0, order);
  };
  return cons(c[0]) + x * cons(c[1]) + y * cons(c[2]) + x * y * cons(c[3]);
}

TaylorMap sqrt_map_auto(const TaylorMap& m) {
  try {
    return m.sqrt();
  } catch (const NonSquareRational&) {
    return m.to_float().sqrt();
  }
}

SampleResult conv_residuals(const JetPoint& j) {
  SampleResult r;
  r.x = j.x();
  r.y = j.y();
  Scalar uxx = j.d_or_zero(2, 0), uxy = j.d_or_zero(2, 1),
         uyy = j.d_or_zero(2, 2);
  Scalar uyy2 = uyy * uyy;
  Scalar n1 = uxx * (Scalar(2) * uxy * j.d_or_zero(3, 3) -
                     Scalar(3) * j.d_or_zero(3, 2) * uyy);
  Scalar n2 = uxx * uyy * j.d_or_zero(3, 3) -
              Scalar(4) * uxy * uxy * j.d_or_zero(3, 3) +
              Scalar(6) * uxy * j.d_or_zero(3, 2) * uyy;
  if (uyy.is_zero()) {
    // solved form degenerates; report the cleared numerators
    r.res1 = j.d_or_zero(3, 0) * uyy2 + n1;
    r.res2 = Scalar(3) * uyy2 * j.d_or_zero(3, 1) - n2;
  } else {
    r.res1 = j.d_or_zero(3, 0) + n1 / uyy2;
    r.res2 = j.d_or_zero(3, 1) - n2 / (Scalar(3) * uyy2);
  }
  r.det_sign = hessian_det(j).sign();
  return r;
}

}  // namespace

void RatFuncY::reduce() {
  if (num.is_zero()) {
    k = 0;
    return;
  }
  Poly uyy = V(VUYY);
  while (k > 0 && num.divisible_by(uyy)) {
    num = num.exact_divide(uyy);
    --k;
  }
}

Scalar RatFuncY::eval(const std::vector<Scalar>& values) const {
  Scalar d(1);
  for (int i = 0; i < k; ++i) d *= values[VUYY];
  return num.eval(values) / d;
}

bool RatFuncY::operator==(const RatFuncY& o) const {
  // cross-multiplied equality of the reduced forms
  int m = std::max(k, o.k);
  return num * uyy_pow(m - k) == o.num * uyy_pow(m - o.k);
}

ProlongedSystem build_prolonged_system() {
  ProlongedSystem sys;
  sys.solved[VUXXX] = conv_uxxx();
  sys.solved[VUXXY] = conv_uxxy();
  sys.solved[VUXYYY] = cond4_solved();
  auto& s = sys.solved;
  s[VUXXYY] = close_over(total_d(s.at(VUXXY), 'y'), s);
  s[VUXXXY] = close_over(total_d(s.at(VUXXX), 'y'), s);
  s[VUXXXX] = close_over(total_d(s.at(VUXXX), 'x'), s);
  s[VUYYYYY] = cond5_solved();
  s[VUXYYYY] = close_over(total_d(s.at(VUXYYY), 'y'), s);
  s[VUXXYYY] = close_over(total_d(s.at(VUXXYY), 'y'), s);
  s[VUXXXYY] = close_over(total_d(s.at(VUXXXY), 'y'), s);
  s[VUXXXXY] = close_over(total_d(s.at(VUXXXX), 'y'), s);
  s[VUXXXXX] = close_over(total_d(s.at(VUXXXX), 'x'), s);
  return sys;
}

std::pair<RatFuncY, RatFuncY> cross_residuals(const ProlongedSystem& sys) {
  const RatFuncY& e1 = sys.solved.at(VUXXX);
  const RatFuncY& e2 = sys.solved.at(VUXXY);

  // fourth order: keep u_xyyy free
  std::map<int, RatFuncY> third = {{VUXXX, e1}, {VUXXY, e2}};
  std::map<int, RatFuncY> third4 = third;
  third4[VUXXYY] = close_over(total_d(e2, 'y'), third);
  RatFuncY r4 = close_over(total_d(e1, 'y'), third4);
  RatFuncY lhs4 = close_over(total_d(e2, 'x'), third4);
  r4.num = r4.num * uyy_pow(lhs4.k) - lhs4.num * uyy_pow(r4.k);
  r4.k += lhs4.k;
  r4.reduce();
  RatFuncY expect4(-(cond4_poly() * det_poly()).scaled(Rational(8, 3)), 4);
  if (!(r4 == expect4)) throw IdentityFailed();

  // fifth order: keep u_yyyyy free
  std::map<int, RatFuncY> pre = third;
  pre[VUXYYY] = sys.solved.at(VUXYYY);
  pre[VUXXYY] = close_over(total_d(e2, 'y'), pre);
  pre[VUXXXY] = close_over(total_d(e1, 'y'), pre);
  pre[VUXXXX] = close_over(total_d(e1, 'x'), pre);
  pre[VUXYYYY] = close_over(total_d(pre.at(VUXYYY), 'y'), pre);
  RatFuncY r5 = close_over(total_d(pre.at(VUXXXX), 'y'), pre);
  RatFuncY lhs5 = close_over(total_d(pre.at(VUXXXY), 'x'), pre);
  r5.num = r5.num * uyy_pow(lhs5.k) - lhs5.num * uyy_pow(r5.k);
  r5.k += lhs5.k;
  r5.reduce();
  RatFuncY expect5((V(VUXX) * det_poly() * cond5_poly()).scaled(Rational(1, 9)),
                   5);
  if (!(r5 == expect5)) throw IdentityFailed();
  return {r4, r5};
}

CompatValues compat_conditions(const JetPoint& j) {
  if (j.order() < 5) throw OrderTooLow();
  auto vals = j.assignment();
  CompatValues out;
  out.c4 = cond4_poly().eval(vals);
  out.c5 = cond5_poly().eval(vals);
  out.c4x = cond4x_poly().eval(vals);
  out.c5x = cond5x_poly().eval(vals);
  return out;
}

JetPoint conic_branch_jet(const ConicCoeffs& c, int branch, const Scalar& x,
                          const Scalar& y, int order) {
  auto cons = [&](const Scalar& v) {
    return TaylorMap::constant(v, x, y, order);
  };
  TaylorMap H = affine_xy(c.h, x, y, order);
  TaylorMap xm = TaylorMap::coordinate(0, x, y, order);
  TaylorMap ym = TaylorMap::coordinate(1, x, y, order);
  TaylorMap K = cons(c.k[0]) + xm * cons(c.k[1]) + ym * cons(c.k[2]) +
                xm * xm * cons(c.k[3]) + xm * ym * cons(c.k[4]) +
                ym * ym * cons(c.k[5]) + xm * xm * ym * cons(c.k[6]) +
                xm * ym * ym * cons(c.k[7]) + xm * xm * ym * ym * cons(c.k[8]);
  if (c.a.is_zero()) {
    if (H.value_at_base().is_zero()) throw DegenerateSample();
    return jet_of_surface((-K) * H.reciprocal(), order);
  }
  TaylorMap disc = H * H - K.scaled(Scalar(4) * c.a);
  if (disc.value_at_base().sign() <= 0) throw NoRealBranch();
  TaylorMap root = sqrt_map_auto(disc);
  TaylorMap num = branch >= 0 ? -H + root : -H - root;
  return jet_of_surface(num.scaled(Scalar(1) / (Scalar(2) * c.a)), order);
}

CompatReport conic_check(const ConicCoeffs& c, int branch,
                         const std::vector<std::pair<Scalar, Scalar>>& samples) {
  CompatReport rep;
  rep.max_residual = Scalar(0);
  for (const auto& [x, y] : samples) {
    JetPoint j = conic_branch_jet(c, branch, x, y, 3);
    SampleResult r = conv_residuals(j);
    rep.samples.push_back(r);
    for (const Scalar* v : {&r.res1, &r.res2})
      if (std::abs(v->value()) > rep.max_residual.value())
        rep.max_residual = v->abs();
  }
  return rep;
}

JetPoint family_jet(const FamilyCoeffs& f, const Scalar& x, const Scalar& y,
                    int order) {
  auto cons = [&](const Scalar& v) {
    return TaylorMap::constant(v, x, y, order);
  };
  TaylorMap xm = TaylorMap::coordinate(0, x, y, order);
  TaylorMap ym = TaylorMap::coordinate(1, x, y, order);
  TaylorMap num = cons(f.a[0]) + xm * cons(f.a[1]) + ym * cons(f.a[2]) +
                  xm * ym * cons(f.a[3]) + ym * ym * cons(f.a[4]) +
                  xm * ym * ym * cons(f.a[5]);
  TaylorMap den = cons(f.b[0]) + ym * cons(f.b[1]);
  if (den.value_at_base().is_zero()) throw PoleAtSample();
  return jet_of_surface(num * den.reciprocal(), order);
}

CompatReport family_check(const FamilyCoeffs& f,
                          const std::vector<std::pair<Scalar, Scalar>>& samples) {
  CompatReport rep;
  rep.max_residual = Scalar(0);
  for (const auto& [x, y] : samples) {
    JetPoint j = family_jet(f, x, y, 3);
    auto [g1, g2] = eval_system_plus(j);
    SampleResult r;
    r.x = x;
    r.y = y;
    r.res1 = g1;
    r.res2 = g2;
    r.det_sign = hessian_det(j).sign();
    rep.samples.push_back(r);
    for (const Scalar* v : {&g1, &g2})
      if (std::abs(v->value()) > rep.max_residual.value())
        rep.max_residual = v->abs();
  }
  return rep;
}

HigherProportionality higher_proportionality(const JetPoint& j, double tol) {
  if (j.order() < 5) throw OrderTooLow();
  auto vals = j.assignment();
  if (vals[VUYY].is_zero()) throw DegenerateSample();
  for (int var : {VUXXX, VUXXY}) {
    Scalar pred = system_instance().solved.at(var).eval(vals);
    Scalar diff = vals[var] - pred;
    if (std::abs(diff.value()) > tol * (1 + std::abs(pred.value())))
      throw NotOnProlongedManifold();
  }

  Scalar uxx = vals[VUXX], uxy = vals[VUXY], uyy = vals[VUYY];
  Scalar z(0), two(2);
  auto residual_of = [&](const Matrix& m, const std::vector<Scalar>& b) {
    std::vector<Scalar> alpha = least_squares(m, b);
    Scalar worst(0);
    for (size_t i = 0; i < m.size(); ++i) {
      Scalar pred(0);
      for (size_t kk = 0; kk < alpha.size(); ++kk) pred += m[i][kk] * alpha[kk];
      Scalar diff = (pred - b[i]).abs();
      if (diff.value() > worst.value()) worst = diff;
    }
    return worst;
  };

  HigherProportionality out;
  Matrix m3 = {{uxx, z}, {two * uxy, uxx}, {uyy, two * uxy}, {z, uyy}};
  std::vector<Scalar> b3 = {vals[VUXXX], Scalar(3) * vals[VUXXY],
                            Scalar(3) * vals[VUXYY], vals[VUYYY]};
  out.res3 = residual_of(m3, b3);

  Matrix m4 = {{uxx, z, z},
               {two * uxy, uxx, z},
               {uyy, two * uxy, uxx},
               {z, uyy, two * uxy},
               {z, z, uyy}};
  std::vector<Scalar> b4 = {vals[VUXXXX], Scalar(4) * vals[VUXXXY],
                            Scalar(6) * vals[VUXXYY], Scalar(4) * vals[VUXYYY],
                            vals[VUYYYY]};
  out.res4 = residual_of(m4, b4);

  Matrix m5 = {{uxx, z, z, z},
               {two * uxy, uxx, z, z},
               {uyy, two * uxy, uxx, z},
               {z, uyy, two * uxy, uxx},
               {z, z, uyy, two * uxy},
               {z, z, z, uyy}};
  std::vector<Scalar> b5 = {vals[VUXXXXX],      Scalar(5) * vals[VUXXXXY],
                            Scalar(10) * vals[VUXXXYY], Scalar(10) * vals[VUXXYYY],
                            Scalar(5) * vals[VUXYYYY],  vals[VUYYYYY]};
  out.res5 = residual_of(m5, b5);
  return out;
}

}  // namespace affinv
