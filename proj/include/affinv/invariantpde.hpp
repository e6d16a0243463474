#ifndef AFFINV_INVARIANTPDE_HPP
#define AFFINV_INVARIANTPDE_HPP

#include <optional>
#include <utility>
#include <vector>

#include "affinv/affgeom.hpp"
#include "affinv/jetspace.hpp"
#include "affinv/sqrtext.hpp"

namespace affinv {

struct WrongRegion : std::runtime_error {
  WrongRegion() : std::runtime_error("jet lies in the wrong hessian region") {}
};
struct NotRankOne : std::runtime_error {
  NotRankOne() : std::runtime_error("cubic symbol is not a perfect cube") {}
};

/// The 13-monomial invariant polynomial F in the third-order jet variables.
Poly F_poly();

/// Pieces of the splitting u_yy^3 F = (u_yy^3 u_xxx + Q)^2 + det(Hess) P^2.
Poly splitting_P();
Poly splitting_Q();

/// The minus-region factors f1 (the "+" line) and f2, with s = sqrt(-det).
SqrtExt minus_factor(int which);

/// The two equations of the plus-region system.
Poly system_plus(int which);

Scalar eval_F(const JetPoint& j);
Scalar eval_full_E(const JetPoint& j);
std::pair<Scalar, Scalar> eval_system_plus(const JetPoint& j);
std::pair<Scalar, Scalar> eval_factors_minus(const JetPoint& j);

/// F with the second-order slots frozen at a^2_(+/-) and lower jets zero.
Poly fiber_restriction(Region which);

struct Proportionality {
  std::vector<Scalar> residual;
  std::vector<Scalar> alpha;                 // (alpha1, alpha2)
  std::optional<std::vector<Scalar>> beta;   // (b11, b12, b22), minus region
  std::optional<std::vector<Scalar>> theta;  // (t1, t2), minus region
};
Proportionality proportionality_residual(const JetPoint& j, double tol = 1e-10);

/// Cubic symbol a0 eta1^3 + a1 eta1^2 eta2 + a2 eta1 eta2^2 + a3 eta2^3
/// with a_i = dF/du_(x^(3-i) y^i) (the i <= j <= k convention).
struct CubicSymbol {
  std::array<Scalar, 4> a{Scalar(0), Scalar(0), Scalar(0), Scalar(0)};
};
CubicSymbol symbol(const Poly& pde, const JetPoint& j);
CubicSymbol symbol_sqrtext(const SqrtExt& pde, const JetPoint& j);

/// Linear form (f1, f2) with (f1 eta1 + f2 eta2)^3 = c; throws NotRankOne.
std::pair<Scalar, Scalar> rank_one_factor(const CubicSymbol& c,
                                          double tol = 1e-9);

/// Max coefficient residual of the Pick-symbol relation at the jet.
Scalar verify_pick_symbol(const JetPoint& j, double tol = 1e-8);

}  // namespace affinv

#endif
