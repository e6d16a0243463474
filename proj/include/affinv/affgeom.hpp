#ifndef AFFINV_AFFGEOM_HPP
#define AFFINV_AFFGEOM_HPP

#include <array>
#include <optional>

#include "affinv/jetspace.hpp"
#include "affinv/sqrtext.hpp"

namespace affinv {

struct DegenerateTransversal : std::runtime_error {
  DegenerateTransversal() : std::runtime_error("transversal field tangent to the surface") {}
};
struct DegenerateHessian : std::runtime_error {
  DegenerateHessian() : std::runtime_error("degenerate hessian") {}
};

struct TransversalField {
  Scalar xi1, xi2, xi3;
  // first derivatives along the surface: dxi[k][m] = d(xi^(m+1))/dx^k
  std::optional<std::array<std::array<Scalar, 3>, 2>> dxi;
};

using MetricForm = SymTensorK;  // k = 2, raw (h11, h12, h22)
using CubicForm = SymTensorK;   // k = 3, raw (C111, C112, C122, C222)

struct EuclidForms {
  MetricForm first;
  std::array<Scalar, 3> normal;
  MetricForm second;
};

struct TransversalData {
  Scalar A;
  MetricForm h;
  // Gamma[k][i][j] = Christoffel symbol with upper index k+1
  std::array<std::array<std::array<Scalar, 2>, 2>, 2> Gamma;
  std::optional<std::array<Scalar, 2>> tau;
  CubicForm C;
};

struct BlaschkeData {
  Scalar rho;
  MetricForm hA;
  CubicForm CA;
  Scalar pick;
};

/// |v|^(1/4); exact when |v| is a fourth power of a rational, float otherwise.
Scalar quarter_root(const Scalar& v);

EuclidForms euclid_forms(const JetPoint& j);

TransversalData transversal_data(const JetPoint& j, const TransversalField& xi);

/// Affine normal at an order-3 jet (no derivative data).
TransversalField affine_normal(const JetPoint& j);

/// Affine normal with its first derivatives along the surface (order >= 4).
TransversalField affine_normal_frame(const JetPoint& j);

BlaschkeData blaschke_and_pick(const JetPoint& j);

/// The Pick invariant as an element of the quarter-power algebra over the
/// jet polynomial ring, with rho = r^(-1/4) taken formally.
GradedRho pick_symbolic();

}  // namespace affinv

#endif
