#include "affinv/affgeom.hpp"

#include <cmath>

namespace affinv {

namespace {

// Hessian entry f_ij and third derivative f_ijk with 0-based x/y indices.
int v2(int i, int j) { return jet_var(2, i + j); }
int v3(int i, int j, int k) { return jet_var(3, i + j + k); }

Scalar f2(const JetPoint& j, int a, int b) { return j.d_or_zero(2, a + b); }
Scalar f3(const JetPoint& j, int a, int b, int c) {
  return j.d_or_zero(3, a + b + c);
}

Scalar sqrt_auto(const Scalar& v) {
  try {
    return v.sqrt();
  } catch (const NonSquareRational&) {
    return Scalar::from_double(std::sqrt(v.value()));
  }
}

// D_k(det Hess) as a polynomial in jet variables, k in {0, 1}.
Poly det_deriv(int k) {
  Poly det = Poly::variable(VUXX) * Poly::variable(VUYY) -
             Poly::variable(VUXY) * Poly::variable(VUXY);
  return total_derivative(det, k == 0 ? 'x' : 'y', 3);
}

// adjugate of the Hessian as polynomials
Poly adj_poly(int i, int j) {
  if (i == 0 && j == 0) return Poly::variable(VUYY);
  if (i == 1 && j == 1) return Poly::variable(VUXX);
  return -Poly::variable(VUXY);
}

}  // namespace

Scalar quarter_root(const Scalar& v) {
  Scalar a = v.abs();
  if (a.exact()) {
    Rational s, q;
    if (rational_sqrt(a.rat(), &s) && rational_sqrt(s, &q)) return Scalar(q);
  }
  return Scalar::from_double(std::pow(a.value(), 0.25));
}

EuclidForms euclid_forms(const JetPoint& j) {
  if (j.order() < 2) throw OrderTooLow();
  Scalar fx = j.d_or_zero(1, 0), fy = j.d_or_zero(1, 1);
  EuclidForms out;
  out.first = SymTensorK(2);
  out.first.c[0] = Scalar(1) + fx * fx;
  out.first.c[1] = fx * fy;
  out.first.c[2] = Scalar(1) + fy * fy;
  Scalar n = sqrt_auto(Scalar(1) + fx * fx + fy * fy);
  out.normal = {-fx / n, -fy / n, Scalar(1) / n};
  out.second = SymTensorK(2);
  for (int i = 0; i < 3; ++i) out.second.c[i] = j.d_or_zero(2, i) / n;
  return out;
}

TransversalData transversal_data(const JetPoint& j, const TransversalField& xi) {
  if (j.order() < 3) throw OrderTooLow();
  Scalar fx = j.d_or_zero(1, 0), fy = j.d_or_zero(1, 1);
  Scalar A = xi.xi3 - xi.xi1 * fx - xi.xi2 * fy;
  if (A.is_zero()) throw DegenerateTransversal();
  Scalar B = Scalar(1) / A;
  Scalar xiv[2] = {xi.xi1, xi.xi2};

  TransversalData out;
  out.A = A;
  out.h = SymTensorK(2);
  for (int i = 0; i < 3; ++i) out.h.c[i] = j.d_or_zero(2, i) * B;
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int jj = 0; jj < 2; ++jj)
        out.Gamma[k][i][jj] = -f2(j, i, jj) * xiv[k] * B;

  if (xi.dxi) {
    const auto& d = *xi.dxi;
    std::array<Scalar, 2> tau;
    for (int k = 0; k < 2; ++k) {
      Scalar Ak = d[k][2] - d[k][0] * fx - xi.xi1 * f2(j, 0, k) -
                  d[k][1] * fy - xi.xi2 * f2(j, 1, k);
      tau[k] = B * (Ak + xi.xi1 * f2(j, k, 0) + xi.xi2 * f2(j, k, 1));
    }
    out.tau = tau;
  }

  out.C = SymTensorK(3);
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i <= k; ++i)
      for (int jj = 0; jj <= i; ++jj) {
        Scalar c = B * f3(j, i, jj, k);
        for (int m = 0; m < 2; ++m)
          c += B * B * xiv[m] *
               (f2(j, m, jj) * f2(j, k, i) + f2(j, i, m) * f2(j, k, jj) +
                f2(j, k, m) * f2(j, i, jj));
        out.C.c[i + jj + k] = c;
      }
  return out;
}

namespace {

struct NormalParts {
  Scalar q;          // |det Hess|^(1/4) = 1/rho
  Scalar W1, W2, G3; // xi = q * (W1, W2, G3)
  Scalar r;
};

NormalParts normal_parts(const JetPoint& j) {
  Scalar r = hessian_det(j);
  if (r.is_zero()) throw DegenerateHessian();
  auto vals = j.assignment();
  Scalar dr[2];
  for (int k = 0; k < 2; ++k) dr[k] = det_deriv(k).eval(vals);
  NormalParts p;
  p.r = r;
  p.q = quarter_root(r);
  Scalar r2 = r * r;
  Scalar quart(Rational(-1, 4));
  p.W1 = quart * (f2(j, 1, 1) * dr[0] - f2(j, 0, 1) * dr[1]) / r2;
  p.W2 = quart * (-f2(j, 0, 1) * dr[0] + f2(j, 0, 0) * dr[1]) / r2;
  p.G3 = p.W1 * j.d_or_zero(1, 0) + p.W2 * j.d_or_zero(1, 1) + Scalar(1);
  return p;
}

}  // namespace

TransversalField affine_normal(const JetPoint& j) {
  if (j.order() < 3) throw OrderTooLow();
  NormalParts p = normal_parts(j);
  return {p.q * p.W1, p.q * p.W2, p.q * p.G3, std::nullopt};
}

TransversalField affine_normal_frame(const JetPoint& j) {
  if (j.order() < 4) throw OrderTooLow();
  NormalParts p = normal_parts(j);
  auto vals = j.assignment();

  Poly det = Poly::variable(VUXX) * Poly::variable(VUYY) -
             Poly::variable(VUXY) * Poly::variable(VUXY);
  Poly drp[2] = {det_deriv(0), det_deriv(1)};
  // numerators over r^2 of the three components divided by q
  Poly num[3];
  for (int i = 0; i < 2; ++i) {
    num[i] = (adj_poly(i, 0) * drp[0] + adj_poly(i, 1) * drp[1])
                 .scaled(Rational(-1, 4));
  }
  num[2] = num[0] * Poly::variable(VUX) + num[1] * Poly::variable(VUY) +
           det * det;

  std::array<std::array<Scalar, 3>, 2> dxi;
  for (int k = 0; k < 2; ++k) {
    char dir = k == 0 ? 'x' : 'y';
    Scalar dkr = drp[k].eval(vals);
    for (int m = 0; m < 3; ++m) {
      // D_k(q * num/r^2) = q * ((1/4) D_k(r)/r * num/r^2 + D_k(num/r^2))
      Scalar n = num[m].eval(vals);
      Scalar dn = total_derivative(num[m], dir, 4).eval(vals);
      Scalar g = n / (p.r * p.r);
      Scalar dg = (dn * p.r - Scalar(2) * n * dkr) / (p.r * p.r * p.r);
      dxi[k][m] = p.q * (Scalar(Rational(1, 4)) * (dkr / p.r) * g + dg);
    }
  }
  return {p.q * p.W1, p.q * p.W2, p.q * p.G3, dxi};
}

BlaschkeData blaschke_and_pick(const JetPoint& j) {
  if (j.order() < 3) throw OrderTooLow();
  Scalar r = hessian_det(j);
  if (r.is_zero()) throw DegenerateHessian();
  auto vals = j.assignment();
  Scalar rho = Scalar(1) / quarter_root(r);
  Scalar drho[2];
  for (int k = 0; k < 2; ++k)
    drho[k] = Scalar(Rational(-1, 4)) * rho * det_deriv(k).eval(vals) / r;

  BlaschkeData out;
  out.rho = rho;
  out.hA = SymTensorK(2);
  for (int i = 0; i < 3; ++i) out.hA.c[i] = rho * j.d_or_zero(2, i);
  out.CA = SymTensorK(3);
  for (int s = 0; s <= 3; ++s) {
    // pick any index split with s y's
    int a = s >= 1, b = s >= 2, c = s >= 3;
    out.CA.c[s] = rho * f3(j, a, b, c) + f2(j, a, b) * drho[c] +
                  f2(j, b, c) * drho[a] + f2(j, a, c) * drho[b];
  }

  Scalar dethA = rho * rho * r;
  Scalar hinv[2][2];
  hinv[0][0] = out.hA.c[2] / dethA;
  hinv[0][1] = hinv[1][0] = -out.hA.c[1] / dethA;
  hinv[1][1] = out.hA.c[0] / dethA;
  auto C = [&](int a, int b, int c) { return out.CA.c[a + b + c]; };
  Scalar pick(0);
  for (int i1 = 0; i1 < 2; ++i1)
    for (int i2 = 0; i2 < 2; ++i2)
      for (int j1 = 0; j1 < 2; ++j1)
        for (int j2 = 0; j2 < 2; ++j2)
          for (int k1 = 0; k1 < 2; ++k1)
            for (int k2 = 0; k2 < 2; ++k2)
              pick += hinv[i1][i2] * hinv[j1][j2] * hinv[k1][k2] *
                      C(i1, j1, k1) * C(i2, j2, k2);
  out.pick = pick;
  return out;
}

GradedRho pick_symbolic() {
  // h^(A ij) = r^(1/4) adj_ij / r; C^A per the coordinate formula with
  // rho = r^(-1/4), rho_k = -(1/4) r^(-5/4) D_k(r).
  GradedRho hinv[2][2];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      GradedRho g;
      g.set(-3, adj_poly(i, j));
      hinv[i][j] = g;
    }
  Poly drp[2] = {det_deriv(0), det_deriv(1)};
  auto CA = [&](int a, int b, int c) {
    GradedRho g;
    g.set(-1, Poly::variable(v3(a, b, c)));
    Poly low = Poly::variable(v2(a, b)) * drp[c] +
               Poly::variable(v2(b, c)) * drp[a] +
               Poly::variable(v2(a, c)) * drp[b];
    g.set(-5, low.scaled(Rational(-1, 4)));
    return g;
  };
  GradedRho pick;
  for (int i1 = 0; i1 < 2; ++i1)
    for (int i2 = 0; i2 < 2; ++i2)
      for (int j1 = 0; j1 < 2; ++j1)
        for (int j2 = 0; j2 < 2; ++j2)
          for (int k1 = 0; k1 < 2; ++k1)
            for (int k2 = 0; k2 < 2; ++k2)
              pick = pick + hinv[i1][i2] * hinv[j1][j2] * hinv[k1][k2] *
                                CA(i1, j1, k1) * CA(i2, j2, k2);
  return pick.normalized();
}

}  // namespace affinv
