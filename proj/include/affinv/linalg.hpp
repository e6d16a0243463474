#ifndef AFFINV_LINALG_HPP
#define AFFINV_LINALG_HPP

#include <vector>

#include "affinv/scalar.hpp"

namespace affinv {

using Matrix = std::vector<std::vector<Scalar>>;

/// Row echelon rank by Gaussian elimination with partial pivoting.
/// Float pivots below tol count as zero; exact pivots are compared to 0.
int matrix_rank(Matrix m, double tol = 1e-10);

/// Solve the least-squares problem min |A x - b| through the normal
/// equations; requires A^t A invertible. Returns x.
std::vector<Scalar> least_squares(const Matrix& a, const std::vector<Scalar>& b);

/// A basis of the left null space of a (vectors w with w^t a = 0).
std::vector<std::vector<Scalar>> left_null_space(const Matrix& a,
                                                 double tol = 1e-10);

/// A particular solution of a x = b obtained by row reduction with free
/// variables set to zero; throws std::runtime_error when inconsistent.
std::vector<Scalar> particular_solution(Matrix a, std::vector<Scalar> b,
                                        double tol = 1e-10);

}  // namespace affinv

#endif
