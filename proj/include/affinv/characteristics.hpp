#ifndef AFFINV_CHARACTERISTICS_HPP
#define AFFINV_CHARACTERISTICS_HPP

#include <array>

#include "affinv/invariantpde.hpp"
#include "affinv/jetspace.hpp"
#include "affinv/sqrtext.hpp"

namespace affinv {

struct NotOnEquation : std::runtime_error {
  NotOnEquation() : std::runtime_error("jet does not satisfy the equation") {}
};

/// Vector of the second-order contact plane in the basis
/// D2_x, D2_y, d/du_xx, d/du_xy, d/du_yy.
struct ContactVector {
  Scalar y1, y2, p11, p12, p22;
};

/// Spanning vector of the characteristic line at an on-equation order-3 jet
/// of the first minus-region factor, projected to the contact plane.
ContactVector char_line(const JetPoint& j, double tol = 1e-9);

/// The three spanning vectors of the characteristic distribution at a
/// minus-region order-2 jet; second_branch selects b = u_xy + s.
std::array<ContactVector, 3> distribution_V(const JetPoint& j,
                                            bool second_branch = false);

/// Evaluate both defining linear equations of the distribution on a vector.
std::array<Scalar, 2> char_var_equations(const JetPoint& j,
                                         const ContactVector& v,
                                         bool second_branch = false);

/// Determinant of the 5x5 tautological-intersection matrix at the jet with
/// the given third-order values (u_xxx, u_xxy, u_xyy, u_yyy).
Scalar recover_pde(const JetPoint& j, const std::array<Scalar, 4>& third,
                   bool second_branch = false);

/// The same determinant expanded symbolically in the jet variables.
SqrtExt recover_pde_symbolic();

/// The exact quotient of the symbolic determinant by the first minus factor.
SqrtExt recover_pde_unit();

struct RankOneCheck {
  Scalar c1, c2;    // linear factor of the cubic symbol
  Scalar residual;  // cube reconstruction error
};

/// Rank-one factorization of the symbol of the first minus factor at j.
RankOneCheck symbol_rank_one_check(const JetPoint& j, double tol = 1e-9);

}  // namespace affinv

#endif
