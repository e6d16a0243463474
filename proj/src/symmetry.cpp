#include "affinv/symmetry.hpp"

#include <cmath>

#include "affinv/linalg.hpp"

namespace affinv {

namespace {

Poly V(int v) { return Poly::variable(v); }

Scalar sqrt_auto(const Scalar& v) {
  try {
    return v.sqrt();
  } catch (const NonSquareRational&) {
    return Scalar::from_double(std::sqrt(v.value()));
  }
}

}  // namespace

AffineMap3 AffineMap3::identity() {
  AffineMap3 g;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) g.M[i][j] = Scalar(i == j ? 1 : 0);
    g.t[i] = Scalar(0);
  }
  return g;
}

AffineMap3 AffineMap3::compose(const AffineMap3& inner) const {
  AffineMap3 out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Scalar s(0);
      for (int k = 0; k < 3; ++k) s += M[i][k] * inner.M[k][j];
      out.M[i][j] = s;
    }
    Scalar s = t[i];
    for (int k = 0; k < 3; ++k) s += M[i][k] * inner.t[k];
    out.t[i] = s;
  }
  return out;
}

Scalar AffineMap3::det() const {
  return M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
         M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
         M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
}

ProlongedField prolong(const VectorField3& x, int order) {
  if (order < 1 || order > 5)
    throw std::invalid_argument("prolong: order must be 1..5");
  ProlongedField out;
  out.base = x;
  out.order = order;
  auto comp = [&](const std::string& w) -> const Poly& {
    return w.empty() ? x.X0 : out.components.at(w);
  };
  for (int m = 1; m <= order; ++m) {
    for (int jy = 0; jy <= m; ++jy) {
      std::string w = jet_word(m - jy, jy);
      std::string parent = w.substr(0, m - 1);
      char dir = w.back();
      // u_(parent,x) and u_(parent,y): order-m variables over the parent word
      int pyc = jy - (dir == 'y' ? 1 : 0);
      Poly upx = V(jet_var(m, pyc));
      Poly upy = V(jet_var(m, pyc + 1));
      Poly val = total_derivative(comp(parent), dir, m) -
                 upx * total_derivative(x.X1, dir, 1) -
                 upy * total_derivative(x.X2, dir, 1);
      out.components[w] = val;
    }
  }
  return out;
}

const std::vector<VectorField3>& aff3_generators() {
  static const std::vector<VectorField3> gens = [] {
    Poly zero, one = Poly::constant(1);
    Poly x = V(VX), y = V(VY), u = V(VU);
    std::vector<VectorField3> g;
    g.push_back({one, zero, zero});   // d/dx
    g.push_back({zero, one, zero});   // d/dy
    g.push_back({zero, zero, one});   // d/du
    g.push_back({x, zero, zero});     // x d/dx
    g.push_back({zero, x, zero});     // x d/dy
    g.push_back({zero, zero, x});     // x d/du
    g.push_back({y, zero, zero});     // y d/dx
    g.push_back({zero, y, zero});     // y d/dy
    g.push_back({zero, zero, y});     // y d/du
    g.push_back({u, zero, zero});     // u d/dx
    g.push_back({zero, u, zero});     // u d/dy
    g.push_back({zero, zero, u});     // u d/du
    return g;
  }();
  return gens;
}

ApplyToF apply_to_F(const VectorField3& x) {
  ProlongedField p = prolong(x, 3);
  Poly f = F_poly();
  Poly lf = x.X1 * f.derivative(VX) + x.X2 * f.derivative(VY) +
            x.X0 * f.derivative(VU);
  for (int m = 1; m <= 3; ++m)
    for (int jy = 0; jy <= m; ++jy)
      lf += p.components.at(jet_word(m - jy, jy)) *
            f.derivative(jet_var(m, jy));
  ApplyToF out;
  out.LF = lf;
  if (lf.is_zero()) {
    out.quotient = Poly();
    return out;
  }
  try {
    out.quotient = lf.exact_divide(f);
  } catch (const DivisionNotExact&) {
    throw NotDivisible();
  }
  return out;
}

JetPoint act_on_jet(const AffineMap3& g, const TaylorMap& f, int k) {
  int ord = f.order();
  Scalar bx = f.x0(), by = f.y0();
  TaylorMap x = TaylorMap::coordinate(0, bx, by, ord);
  TaylorMap y = TaylorMap::coordinate(1, bx, by, ord);
  auto row = [&](int i) {
    return x.scaled(g.M[i][0]) + y.scaled(g.M[i][1]) + f.scaled(g.M[i][2]) +
           TaylorMap::constant(g.t[i], bx, by, ord);
  };
  TaylorMap X = row(0), Y = row(1), U = row(2);
  try {
    auto [ix, iy] = TaylorMap::invert2d(X, Y);
    TaylorMap image = U.compose(ix, iy);
    return jet_of_surface(image, k);
  } catch (const SingularJacobian&) {
    throw NonAdmissibleChart();
  }
}

AffineMap3 normalize_to_origin(const JetPoint& j) {
  if (j.order() < 2) throw OrderTooLow();
  Scalar uxx = j.d_or_zero(2, 0), uxy = j.d_or_zero(2, 1),
         uyy = j.d_or_zero(2, 2);
  if (hessian_det(j).is_zero()) throw DegenerateHessian();

  // pre-map making the (1,1) entry of the Hessian nonzero
  Scalar P[2][2] = {{Scalar(1), Scalar(0)}, {Scalar(0), Scalar(1)}};
  Scalar H[2][2] = {{uxx, uxy}, {uxy, uyy}};
  if (uxx.is_zero() && !uyy.is_zero()) {
    // swap x and y
    P[0][0] = Scalar(0); P[0][1] = Scalar(1);
    P[1][0] = Scalar(1); P[1][1] = Scalar(0);
    H[0][0] = uyy; H[1][1] = uxx;
  } else if (uxx.is_zero() && uyy.is_zero()) {
    // x' = x, y' = y - x, so x = x', y = x' + y'
    P[0][0] = Scalar(1); P[0][1] = Scalar(0);
    P[1][0] = Scalar(-1); P[1][1] = Scalar(1);
    // H'(e1) with x = x', y = x' + y'
    H[0][0] = uxx + Scalar(2) * uxy + uyy;
    H[0][1] = H[1][0] = uxy + uyy;
    H[1][1] = uyy;
  }

  Scalar d1 = H[0][0];
  Scalar l = H[0][1] / d1;
  Scalar d2 = H[1][1] - l * l * d1;

  // (x'', y'') = (x' + l y', y'')
  Scalar LT[2][2] = {{Scalar(1), l}, {Scalar(0), Scalar(1)}};

  // scaling on top of the triangular congruence: prefer the square-root
  // normalization (the A A^t = Hess picture) when it stays rational, fall
  // back to completing the square with a u-rescaling, then to floats.
  Scalar c, s1, s2;
  Scalar sgn1(d1.sign());
  Scalar e1 = sgn1 * d1, e2 = (sgn1 * d2).abs();
  Rational r1, r2;
  if (e1.exact() && e2.exact() && rational_sqrt(e1.rat(), &r1) &&
      rational_sqrt(e2.rat(), &r2)) {
    c = sgn1;
    s1 = Scalar(r1);
    s2 = Scalar(r2);
  } else {
    Scalar ratio = (d2 / d1).abs();
    if (ratio.exact() && rational_sqrt(ratio.rat(), &r2)) {
      c = Scalar(1) / d1;
      s1 = Scalar(1);
      s2 = Scalar(r2);
    } else {
      c = sgn1.to_float();
      s1 = Scalar::from_double(std::sqrt(e1.value()));
      s2 = Scalar::from_double(std::sqrt(e2.value()));
    }
  }

  Scalar B[2][2];
  for (int i = 0; i < 2; ++i)
    for (int jj = 0; jj < 2; ++jj) {
      Scalar s(0);
      for (int kk = 0; kk < 2; ++kk) s += LT[i][kk] * P[kk][jj];
      B[i][jj] = s;
    }
  B[0][0] = s1 * B[0][0];
  B[0][1] = s1 * B[0][1];
  B[1][0] = s2 * B[1][0];
  B[1][1] = s2 * B[1][1];

  Scalar ux = j.d_or_zero(1, 0), uy = j.d_or_zero(1, 1);
  AffineMap3 g = AffineMap3::identity();
  g.M[0][0] = B[0][0]; g.M[0][1] = B[0][1]; g.M[0][2] = Scalar(0);
  g.M[1][0] = B[1][0]; g.M[1][1] = B[1][1]; g.M[1][2] = Scalar(0);
  g.M[2][0] = -c * ux; g.M[2][1] = -c * uy; g.M[2][2] = c;
  g.t[0] = -(B[0][0] * j.x() + B[0][1] * j.y());
  g.t[1] = -(B[1][0] * j.x() + B[1][1] * j.y());
  g.t[2] = c * (ux * j.x() + uy * j.y() - j.u());
  return g;
}

std::array<Scalar, 4> gl2_pullback_third(
    const std::array<std::array<Scalar, 2>, 2>& a,
    const std::array<Scalar, 4>& v) {
  if (a[0][1] != a[1][0])
    throw std::invalid_argument("gl2_pullback_third: matrix must be symmetric");
  Scalar det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
  if (det.is_zero()) throw SingularMatrix();
  auto sym = gl2_pullback_third_sym();
  std::vector<Scalar> vals(kNumVars, Scalar(0));
  vals[VA11] = a[0][0];
  vals[VA12] = a[0][1];
  vals[VA22] = a[1][1];
  for (int i = 0; i < 4; ++i) vals[jet_var(3, i)] = v[i];
  Scalar det3 = det * det * det;
  std::array<Scalar, 4> out;
  for (int i = 0; i < 4; ++i) out[i] = sym[i].eval(vals) / det3;
  return out;
}

std::array<Poly, 4> gl2_pullback_third_sym() {
  Poly a11 = V(VA11), a12 = V(VA12), a22 = V(VA22);
  Poly uxxx = V(VUXXX), uxxy = V(VUXXY), uxyy = V(VUXYY), uyyy = V(VUYYY);
  Poly c3 = Poly::constant(3), c2 = Poly::constant(2);
  std::array<Poly, 4> out;
  out[0] = a22.pow(3) * uxxx - c3 * a22.pow(2) * a12 * uxxy +
           c3 * a22 * a12.pow(2) * uxyy - a12.pow(3) * uyyy;
  out[1] = -a22.pow(2) * a12 * uxxx +
           (c2 * a22 * a12.pow(2) + a11 * a22.pow(2)) * uxxy +
           (-a12.pow(3) - c2 * a11 * a22 * a12) * uxyy +
           a11 * a12.pow(2) * uyyy;
  out[2] = a12.pow(2) * a22 * uxxx +
           (-a12.pow(3) - c2 * a11 * a22 * a12) * uxxy +
           (a22 * a11.pow(2) + c2 * a12.pow(2) * a11) * uxyy -
           a12 * a11.pow(2) * uyyy;
  out[3] = -a12.pow(3) * uxxx + c3 * a12.pow(2) * a11 * uxxy -
           c3 * a12 * a11.pow(2) * uxyy + a11.pow(3) * uyyy;
  return out;
}

int lifted_rank(const JetPoint& j) {
  if (j.order() < 3) throw OrderTooLow();
  auto vals = j.assignment();
  Matrix m;
  for (const auto& x : aff3_generators()) {
    ProlongedField p = prolong(x, 3);
    std::vector<Scalar> row;
    row.push_back(x.X1.eval(vals));
    row.push_back(x.X2.eval(vals));
    row.push_back(x.X0.eval(vals));
    for (int o = 1; o <= 3; ++o)
      for (int jy = 0; jy <= o; ++jy)
        row.push_back(p.components.at(jet_word(o - jy, jy)).eval(vals));
    m.push_back(std::move(row));
  }
  return matrix_rank(m);
}

}  // namespace affinv
