#include "affinv/characteristics.hpp"

#include <cmath>
#include <vector>

namespace affinv {

namespace {

void require_minus(const JetPoint& j) {
  if (classify_fiber(j) != Region::minus) throw WrongRegion();
}

Scalar sqrt_auto(const Scalar& v) {
  try {
    return v.sqrt();
  } catch (const NonSquareRational&) {
    return Scalar::from_double(std::sqrt(v.value()));
  }
}

// s = sqrt(-det Hess), the positive root
Scalar minus_root(const JetPoint& j) { return sqrt_auto(-hessian_det(j)); }

Scalar branch_b(const JetPoint& j, bool second_branch) {
  Scalar s = minus_root(j);
  return second_branch ? j.d("xy") + s : j.d("xy") - s;
}

SqrtExt det5(const std::vector<std::vector<SqrtExt>>& m) {
  size_t n = m.size();
  if (n == 1) return m[0][0];
  SqrtExt out;
  int sign = 1;
  for (size_t c = 0; c < n; ++c) {
    if (!m[0][c].is_zero()) {
      std::vector<std::vector<SqrtExt>> minor;
      for (size_t r = 1; r < n; ++r) {
        std::vector<SqrtExt> row;
        for (size_t cc = 0; cc < n; ++cc)
          if (cc != c) row.push_back(m[r][cc]);
        minor.push_back(std::move(row));
      }
      SqrtExt term = m[0][c] * det5(minor);
      out = sign > 0 ? out + term : out - term;
    }
    sign = -sign;
  }
  return out;
}

Scalar det5_num(const std::vector<std::vector<Scalar>>& m) {
  size_t n = m.size();
  if (n == 1) return m[0][0];
  Scalar out(0);
  int sign = 1;
  for (size_t c = 0; c < n; ++c) {
    if (!m[0][c].is_zero()) {
      std::vector<std::vector<Scalar>> minor;
      for (size_t r = 1; r < n; ++r) {
        std::vector<Scalar> row;
        for (size_t cc = 0; cc < n; ++cc)
          if (cc != c) row.push_back(m[r][cc]);
        minor.push_back(std::move(row));
      }
      Scalar term = m[0][c] * det5_num(minor);
      out = sign > 0 ? out + term : out - term;
    }
    sign = -sign;
  }
  return out;
}

}  // namespace

ContactVector char_line(const JetPoint& j, double tol) {
  if (j.order() < 3) throw OrderTooLow();
  require_minus(j);
  auto [f1, f2] = eval_factors_minus(j);
  (void)f2;
  if (std::abs(f1.value()) > tol) throw NotOnEquation();
  Scalar s = minus_root(j);
  Scalar a = s * j.d("yy");
  Scalar b = -(s * j.d("xy") + hessian_det(j));
  return {a, b, a * j.d("xxx") + b * j.d("xxy"),
          a * j.d("xxy") + b * j.d("xyy"), a * j.d("xyy") + b * j.d("yyy")};
}

std::array<ContactVector, 3> distribution_V(const JetPoint& j,
                                            bool second_branch) {
  require_minus(j);
  Scalar b = branch_b(j, second_branch);
  Scalar uyy = j.d("yy");
  Scalar z(0);
  return {ContactVector{-uyy, b, z, z, z},
          ContactVector{z, z, Scalar(2) * b, uyy, z},
          ContactVector{z, z, -b * b, z, uyy * uyy}};
}

std::array<Scalar, 2> char_var_equations(const JetPoint& j,
                                         const ContactVector& v,
                                         bool second_branch) {
  require_minus(j);
  Scalar s = minus_root(j);
  if (second_branch) s = -s;
  Scalar uxx = j.d("xx"), uxy = j.d("xy"), uyy = j.d("yy");
  Scalar e1 = v.y1 * uxy * s + v.y2 * uyy * s + v.y1 * uxx * uyy -
              v.y1 * uxy * uxy;
  Scalar e2 = Scalar(2) * v.p12 * uyy * s - Scalar(2) * s * v.p22 * uxy +
              v.p11 * uyy * uyy - Scalar(2) * v.p12 * uxy * uyy -
              v.p22 * uxx * uyy + Scalar(2) * v.p22 * uxy * uxy;
  return {e1, e2};
}

Scalar recover_pde(const JetPoint& j, const std::array<Scalar, 4>& third,
                   bool second_branch) {
  require_minus(j);
  Scalar b = branch_b(j, second_branch);
  Scalar uyy = j.d("yy");
  Scalar z(0), one(1);
  std::vector<std::vector<Scalar>> m = {
      {one, z, third[0], third[1], third[2]},
      {z, one, third[1], third[2], third[3]},
      {-uyy, b, z, z, z},
      {z, z, Scalar(2) * b, uyy, z},
      {z, z, -b * b, z, uyy * uyy}};
  return det5_num(m);
}

SqrtExt recover_pde_symbolic() {
  auto P = [](int v) { return SqrtExt::from_poly(Poly::variable(v)); };
  SqrtExt one = SqrtExt::from_poly(Poly::constant(1));
  SqrtExt z;
  SqrtExt uyy = P(VUYY);
  SqrtExt b = SqrtExt(Poly::variable(VUXY), -Poly::constant(1));
  SqrtExt two = SqrtExt::from_poly(Poly::constant(2));
  std::vector<std::vector<SqrtExt>> m = {
      {one, z, P(VUXXX), P(VUXXY), P(VUXYY)},
      {z, one, P(VUXXY), P(VUXYY), P(VUYYY)},
      {-uyy, b, z, z, z},
      {z, z, two * b, uyy, z},
      {z, z, -(b * b), z, uyy * uyy}};
  return det5(m);
}

SqrtExt recover_pde_unit() {
  return recover_pde_symbolic().exact_divide(minus_factor(1));
}

RankOneCheck symbol_rank_one_check(const JetPoint& j, double tol) {
  require_minus(j);
  CubicSymbol c = symbol_sqrtext(minus_factor(1), j);
  auto [c1, c2] = rank_one_factor(c, tol);
  std::array<Scalar, 4> cube = {c1 * c1 * c1, Scalar(3) * c1 * c1 * c2,
                                Scalar(3) * c1 * c2 * c2, c2 * c2 * c2};
  double scale = 1.0;
  for (const auto& a : c.a) scale = std::max(scale, std::abs(a.value()));
  Scalar worst(0);
  for (int i = 0; i < 4; ++i) {
    Scalar d = (cube[i] - c.a[i]).abs();
    if (d.value() > worst.value()) worst = d;
  }
  return {c1, c2, Scalar::from_double(worst.value() / scale)};
}

}  // namespace affinv
