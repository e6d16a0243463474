#ifndef AFFINV_TAYLOR_HPP
#define AFFINV_TAYLOR_HPP

#include <map>
#include <utility>

#include "affinv/scalar.hpp"

namespace affinv {

struct ZeroConstantTerm : std::runtime_error {
  ZeroConstantTerm() : std::runtime_error("zero constant term") {}
};
struct SingularJacobian : std::runtime_error {
  SingularJacobian() : std::runtime_error("singular 2x2 jacobian") {}
};
struct BaseMismatch : std::runtime_error {
  BaseMismatch() : std::runtime_error("composition base point mismatch") {}
};

/// Truncated bivariate Taylor expansion sum c_ij (x-x0)^i (y-y0)^j with
/// i + j <= order. Order is capped at 6 (order-5 jets plus a guard).
class TaylorMap {
 public:
  static constexpr int kMaxOrder = 6;
  using Key = std::pair<int, int>;

  TaylorMap() : x0_(0), y0_(0), order_(kMaxOrder) {}
  TaylorMap(Scalar x0, Scalar y0, int order);

  static TaylorMap constant(Scalar c, Scalar x0, Scalar y0, int order);
  /// The coordinate function x (or y) expanded at the base point.
  static TaylorMap coordinate(int which, Scalar x0, Scalar y0, int order);

  const Scalar& x0() const { return x0_; }
  const Scalar& y0() const { return y0_; }
  int order() const { return order_; }
  const std::map<Key, Scalar>& coeffs() const { return coeffs_; }
  Scalar coeff(int i, int j) const;
  void set_coeff(int i, int j, const Scalar& c);
  Scalar value_at_base() const { return coeff(0, 0); }

  friend TaylorMap operator+(const TaylorMap& a, const TaylorMap& b);
  friend TaylorMap operator-(const TaylorMap& a, const TaylorMap& b);
  friend TaylorMap operator*(const TaylorMap& a, const TaylorMap& b);
  TaylorMap operator-() const;
  TaylorMap scaled(const Scalar& c) const;
  TaylorMap pow(int n) const;
  TaylorMap& operator+=(const TaylorMap& o) { return *this = *this + o; }
  TaylorMap& operator-=(const TaylorMap& o) { return *this = *this - o; }
  TaylorMap& operator*=(const TaylorMap& o) { return *this = *this * o; }

  /// Formal partial derivative (same order cap; top-degree data is lost).
  TaylorMap derivative(int which) const;

  /// f composed with the pair (g1, g2); g's values at its base must land on
  /// f's base point. Result lives at g's base.
  TaylorMap compose(const TaylorMap& g1, const TaylorMap& g2) const;

  /// Inverse of the 2D map (g1, g2); result pair is based at the image point.
  static std::pair<TaylorMap, TaylorMap> invert2d(const TaylorMap& g1,
                                                  const TaylorMap& g2);

  TaylorMap reciprocal() const;
  TaylorMap sqrt() const;

  /// True Taylor evaluation: plug in actual offsets from the base point.
  Scalar eval(const Scalar& x, const Scalar& y) const;

  bool all_exact() const;
  TaylorMap to_float() const;

 private:
  Scalar x0_, y0_;
  int order_;
  std::map<Key, Scalar> coeffs_;  // zero coefficients not stored
};

}  // namespace affinv

#endif
