#include "affinv/invariantpde.hpp"

#include <cmath>

#include "affinv/linalg.hpp"

namespace affinv {

namespace {

Poly V(int v) { return Poly::variable(v); }
Poly C(long c) { return Poly::constant(c); }

Scalar sqrt_auto(const Scalar& v) {
  try {
    return v.sqrt();
  } catch (const NonSquareRational&) {
    return Scalar::from_double(std::sqrt(v.value()));
  }
}

bool rational_cbrt(const Rational& q, Rational* root) {
  auto icbrt = [](BigInt n) {
    if (n == 0) return BigInt(0);
    BigInt x = 1;
    while (x * x * x < n) x <<= 1;
    BigInt lo = x >> 1, hi = x;
    while (lo < hi) {
      BigInt mid = (lo + hi) / 2;
      if (mid * mid * mid < n)
        lo = mid + 1;
      else
        hi = mid;
    }
    return lo;
  };
  bool neg = q < 0;
  Rational a = neg ? Rational(-q) : q;
  BigInt n = numerator(a), d = denominator(a);
  BigInt cn = icbrt(n), cd = icbrt(d);
  if (cn * cn * cn != n || cd * cd * cd != d) return false;
  if (root) *root = neg ? Rational(-cn, cd) : Rational(cn, cd);
  return true;
}

Scalar cbrt_auto(const Scalar& v) {
  if (v.exact()) {
    Rational r;
    if (rational_cbrt(v.rat(), &r)) return Scalar(r);
  }
  return Scalar::from_double(std::cbrt(v.value()));
}

}  // namespace

Poly F_poly() {
  Poly uxx = V(VUXX), uxy = V(VUXY), uyy = V(VUYY);
  Poly uxxx = V(VUXXX), uxxy = V(VUXXY), uxyy = V(VUXYY), uyyy = V(VUYYY);
  return C(6) * uxx * uxxx * uxy * uyy * uyyy
       - C(6) * uxx * uxxx * uxyy * uyy * uyy
       - C(18) * uxx * uxxy * uxy * uxyy * uyy
       + C(12) * uxx * uxxy * uxy * uxy * uyyy
       - C(6) * uxx * uxx * uxxy * uyy * uyyy
       + C(9) * uxx * uxxy * uxxy * uyy * uyy
       - C(6) * uxx * uxx * uxy * uxyy * uyyy
       + C(9) * uxx * uxx * uxyy * uxyy * uyy
       + uxx * uxx * uxx * uyyy * uyyy
       - C(6) * uxxx * uxxy * uxy * uyy * uyy
       + C(12) * uxxx * uxy * uxy * uxyy * uyy
       - C(8) * uxxx * uxy * uxy * uxy * uyyy
       + uxxx * uxxx * uyy * uyy * uyy;
}

Poly splitting_P() {
  Poly uxx = V(VUXX), uxy = V(VUXY), uyy = V(VUYY);
  Poly uxxy = V(VUXXY), uxyy = V(VUXYY), uyyy = V(VUYYY);
  return uxx * uyy * uyyy - C(3) * uxxy * uyy * uyy -
         C(4) * uxy * uxy * uyyy + C(6) * uxy * uxyy * uyy;
}

Poly splitting_Q() {
  Poly uxx = V(VUXX), uxy = V(VUXY), uyy = V(VUYY);
  Poly uxxy = V(VUXXY), uxyy = V(VUXYY), uyyy = V(VUYYY);
  return C(3) * uxx * uxy * uyy * uyyy - C(3) * uxx * uxyy * uyy * uyy -
         C(3) * uxxy * uxy * uyy * uyy - C(4) * uxy * uxy * uxy * uyyy +
         C(6) * uxy * uxy * uxyy * uyy;
}

SqrtExt minus_factor(int which) {
  Poly R = -(V(VUYY).pow(3) * V(VUXXX) + splitting_Q());
  if (which == 1) return SqrtExt(R, splitting_P());
  if (which == 2) return SqrtExt(-R, splitting_P());
  throw std::invalid_argument("minus_factor: which must be 1 or 2");
}

Poly system_plus(int which) {
  Poly uxx = V(VUXX), uxy = V(VUXY), uyy = V(VUYY);
  Poly uxxx = V(VUXXX), uxxy = V(VUXXY), uxyy = V(VUXYY), uyyy = V(VUYYY);
  if (which == 1)
    return uxx * uxx * uyyy - C(3) * uxx * uyy * uxxy +
           C(2) * uxy * uyy * uxxx;
  if (which == 2)
    return uyy * uyy * uxxx - C(3) * uxx * uyy * uxyy +
           C(2) * uxy * uxx * uyyy;
  throw std::invalid_argument("system_plus: which must be 1 or 2");
}

Scalar eval_F(const JetPoint& j) {
  if (j.order() < 3) throw OrderTooLow();
  return F_poly().eval(j.assignment());
}

Scalar eval_full_E(const JetPoint& j) {
  return hessian_det(j) * eval_F(j);
}

std::pair<Scalar, Scalar> eval_system_plus(const JetPoint& j) {
  if (j.order() < 3) throw OrderTooLow();
  auto vals = j.assignment();
  return {system_plus(1).eval(vals), system_plus(2).eval(vals)};
}

std::pair<Scalar, Scalar> eval_factors_minus(const JetPoint& j) {
  if (j.order() < 3) throw OrderTooLow();
  if (classify_fiber(j) != Region::minus) throw WrongRegion();
  auto vals = j.assignment();
  Scalar s = sqrt_auto(-hessian_det(j));
  SqrtExt f1 = minus_factor(1), f2 = minus_factor(2);
  return {f1.re.eval(vals) + s * f1.im.eval(vals),
          f2.re.eval(vals) + s * f2.im.eval(vals)};
}

Poly fiber_restriction(Region which) {
  if (which == Region::degenerate)
    throw std::invalid_argument("fiber_restriction: plus or minus only");
  Poly f = F_poly();
  f = f.substituted(VUXX, C(1));
  f = f.substituted(VUXY, Poly());
  f = f.substituted(VUYY, which == Region::plus ? C(1) : C(-1));
  for (int v : {VX, VY, VU, VUX, VUY}) f = f.substituted(v, Poly());
  return f;
}

Proportionality proportionality_residual(const JetPoint& j, double tol) {
  if (j.order() < 3) throw OrderTooLow();
  Region region = classify_fiber(j);
  if (region == Region::degenerate) throw DegenerateHessian();
  Scalar uxx = j.d_or_zero(2, 0), uxy = j.d_or_zero(2, 1),
         uyy = j.d_or_zero(2, 2);
  std::vector<Scalar> b = {j.d_or_zero(3, 0), Scalar(3) * j.d_or_zero(3, 1),
                           Scalar(3) * j.d_or_zero(3, 2), j.d_or_zero(3, 3)};
  Matrix halpha = {{uxx, Scalar(0)},
                   {Scalar(2) * uxy, uxx},
                   {uyy, Scalar(2) * uxy},
                   {Scalar(0), uyy}};
  Proportionality out;
  if (region == Region::plus) {
    out.alpha = least_squares(halpha, b);
    out.residual.resize(4, Scalar(0));
    for (int i = 0; i < 4; ++i) {
      out.residual[i] = -b[i];
      for (int k = 0; k < 2; ++k) out.residual[i] += halpha[i][k] * out.alpha[k];
    }
    return out;
  }
  Scalar s = sqrt_auto(-hessian_det(j));
  Scalar t1 = uxy - s, t2 = uyy;
  Matrix m = {{uxx, Scalar(0), t1, Scalar(0), Scalar(0)},
              {Scalar(2) * uxy, uxx, t2, Scalar(2) * t1, Scalar(0)},
              {uyy, Scalar(2) * uxy, Scalar(0), Scalar(2) * t2, t1},
              {Scalar(0), uyy, Scalar(0), Scalar(0), t2}};
  auto nulls = left_null_space(m, tol);
  out.theta = std::vector<Scalar>{t1, t2};
  for (const auto& w : nulls) {
    Scalar dot(0), nrm(0);
    for (int i = 0; i < 4; ++i) {
      dot += w[i] * b[i];
      nrm += w[i] * w[i];
    }
    out.residual.push_back(dot / sqrt_auto(nrm));
  }
  bool consistent = true;
  for (const auto& rres : out.residual)
    if (std::abs(rres.value()) > tol) consistent = false;
  if (consistent) {
    try {
      auto sol = particular_solution(m, b, tol);
      out.alpha = {sol[0], sol[1]};
      out.beta = std::vector<Scalar>{sol[2], sol[3], sol[4]};
    } catch (const std::runtime_error&) {
    }
  }
  return out;
}

CubicSymbol symbol(const Poly& pde, const JetPoint& j) {
  auto vals = j.assignment();
  CubicSymbol out;
  for (int i = 0; i <= 3; ++i)
    out.a[i] = pde.derivative(jet_var(3, i)).eval(vals);
  return out;
}

CubicSymbol symbol_sqrtext(const SqrtExt& pde, const JetPoint& j) {
  if (classify_fiber(j) != Region::minus) throw WrongRegion();
  auto vals = j.assignment();
  Scalar s = sqrt_auto(-hessian_det(j));
  CubicSymbol out;
  for (int i = 0; i <= 3; ++i) {
    int v = jet_var(3, i);
    out.a[i] = pde.re.derivative(v).eval(vals) +
               s * pde.im.derivative(v).eval(vals);
  }
  return out;
}

std::pair<Scalar, Scalar> rank_one_factor(const CubicSymbol& c, double tol) {
  const auto& a = c.a;
  Scalar cond1 = a[1] * a[1] - Scalar(3) * a[0] * a[2];
  Scalar cond2 = a[2] * a[2] - Scalar(3) * a[1] * a[3];
  Scalar cond3 = Scalar(9) * a[0] * a[3] - a[1] * a[2];
  double scale = 1;
  for (const auto& v : a) scale = std::max(scale, std::abs(v.value()));
  double s2 = scale * scale;
  bool all_exact = a[0].exact() && a[1].exact() && a[2].exact() && a[3].exact();
  auto ok = [&](const Scalar& v) {
    return all_exact ? v.is_zero() : std::abs(v.value()) <= tol * s2;
  };
  if (!ok(cond1) || !ok(cond2) || !ok(cond3)) throw NotRankOne();
  auto small = [&](const Scalar& v) {
    return all_exact ? v.is_zero() : std::abs(v.value()) <= tol * scale;
  };
  if (small(a[0])) {
    if (!small(a[1]) || !small(a[2])) throw NotRankOne();
    return {Scalar(0), cbrt_auto(a[3])};
  }
  Scalar f1 = cbrt_auto(a[0]);
  Scalar f2 = a[1] / (Scalar(3) * f1 * f1);
  return {f1, f2};
}

Scalar verify_pick_symbol(const JetPoint& j, double) {
  if (j.order() < 3) throw OrderTooLow();
  Scalar det = hessian_det(j);
  if (det.is_zero()) throw DegenerateHessian();
  BlaschkeData bd = blaschke_and_pick(j);
  Scalar hinv[2][2];
  Scalar dethA = bd.rho * bd.rho * det;
  hinv[0][0] = bd.hA.c[2] / dethA;
  hinv[0][1] = hinv[1][0] = -bd.hA.c[1] / dethA;
  hinv[1][1] = bd.hA.c[0] / dethA;
  auto CA = [&](int a, int b, int cc) { return bd.CA.c[a + b + cc]; };
  // raw tensor T^(ijk), then cubic coefficients with all-index summation
  Scalar T[2][2][2];
  for (int i = 0; i < 2; ++i)
    for (int jj = 0; jj < 2; ++jj)
      for (int k = 0; k < 2; ++k) {
        Scalar t(0);
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b)
            for (int cc = 0; cc < 2; ++cc)
              t += hinv[a][i] * hinv[b][jj] * hinv[cc][k] * CA(a, b, cc);
        T[i][jj][k] = t;
      }
  Scalar ad = det.abs();
  Scalar pre = Scalar(8) * sqrt_auto(ad * ad * ad * ad * ad);
  Scalar lhs[4] = {pre * T[0][0][0], pre * Scalar(3) * T[0][0][1],
                   pre * Scalar(3) * T[0][1][1], pre * T[1][1][1]};
  CubicSymbol sym = symbol(F_poly(), j);
  Scalar sgn(det.sign());
  double scale = 1;
  for (int i = 0; i < 4; ++i)
    scale = std::max(scale, std::abs((sgn * sym.a[i]).value()));
  double worst = 0;
  for (int i = 0; i < 4; ++i)
    worst = std::max(worst,
                     std::abs((lhs[i] - sgn * sym.a[i]).value()) / scale);
  return Scalar::from_double(worst);
}

}  // namespace affinv
