#ifndef AFFINV_SYMMETRY_HPP
#define AFFINV_SYMMETRY_HPP

#include <array>
#include <map>
#include <string>
#include <vector>

#include "affinv/invariantpde.hpp"
#include "affinv/jetspace.hpp"

namespace affinv {

struct NotDivisible : std::runtime_error {
  NotDivisible() : std::runtime_error("lie derivative not divisible by F") {}
};
struct NonAdmissibleChart : std::runtime_error {
  NonAdmissibleChart() : std::runtime_error("transformed surface is not a graph") {}
};
struct SingularMatrix : std::runtime_error {
  SingularMatrix() : std::runtime_error("singular matrix") {}
};

/// Vector field X = X1 dx + X2 dy + X0 du with polynomial coefficients
/// in (x, y, u).
struct VectorField3 {
  Poly X1, X2, X0;
};

/// Prolongation components keyed by sorted multi-index word, lengths 1..order.
struct ProlongedField {
  VectorField3 base;
  int order = 3;
  std::map<std::string, Poly> components;
};

struct AffineMap3 {
  std::array<std::array<Scalar, 3>, 3> M;
  std::array<Scalar, 3> t;

  static AffineMap3 identity();
  AffineMap3 compose(const AffineMap3& inner) const;  // this after inner
  Scalar det() const;
};

ProlongedField prolong(const VectorField3& x, int order);

const std::vector<VectorField3>& aff3_generators();

struct ApplyToF {
  Poly LF;
  Poly quotient;
};
/// Lie derivative of F along the third prolongation; throws NotDivisible
/// when the result is not an exact multiple of F.
ApplyToF apply_to_F(const VectorField3& x);

JetPoint act_on_jet(const AffineMap3& g, const TaylorMap& f, int k);

/// Group element carrying the jet to a^2_+ or a^2_-; exact when the
/// diagonalized Hessian ratio is a rational square, float otherwise.
AffineMap3 normalize_to_origin(const JetPoint& j);

std::array<Scalar, 4> gl2_pullback_third(const std::array<std::array<Scalar, 2>, 2>& a,
                                         const std::array<Scalar, 4>& v);

/// Symbolic pullback of the third-order coordinates through a symmetric A
/// with the a_ij kept as variables; entries are scaled by det(A)^3.
std::array<Poly, 4> gl2_pullback_third_sym();

int lifted_rank(const JetPoint& j);

}  // namespace affinv

#endif
