#include "affinv/jetspace.hpp"

#include <cmath>

namespace affinv {

std::string region_name(Region r) {
  switch (r) {
    case Region::plus: return "plus";
    case Region::minus: return "minus";
    default: return "degenerate";
  }
}

std::string jet_word(int xcount, int ycount) {
  return std::string(xcount, 'x') + std::string(ycount, 'y');
}

JetPoint::JetPoint(int order, Scalar x, Scalar y, Scalar u)
    : order_(order), x_(std::move(x)), y_(std::move(y)), u_(std::move(u)) {
  if (order < 0 || order > 5)
    throw std::invalid_argument("JetPoint: order out of range");
  for (int k = 1; k <= order; ++k)
    for (int j = 0; j <= k; ++j) derivs_[jet_word(k - j, j)] = Scalar(0);
}

const Scalar& JetPoint::d(const std::string& word) const {
  auto it = derivs_.find(word);
  if (it == derivs_.end())
    throw std::out_of_range("JetPoint: no entry '" + word + "'");
  return it->second;
}

Scalar JetPoint::d_or_zero(int order, int ycount) const {
  auto it = derivs_.find(jet_word(order - ycount, ycount));
  return it == derivs_.end() ? Scalar(0) : it->second;
}

void JetPoint::set(const std::string& word, const Scalar& v) {
  auto it = derivs_.find(word);
  if (it == derivs_.end())
    throw std::out_of_range("JetPoint: no entry '" + word + "'");
  it->second = v;
}

std::vector<Scalar> JetPoint::assignment() const {
  std::vector<Scalar> vals(kNumVars, Scalar(0));
  vals[VX] = x_;
  vals[VY] = y_;
  vals[VU] = u_;
  for (int k = 1; k <= order_; ++k)
    for (int j = 0; j <= k; ++j) vals[jet_var(k, j)] = d_or_zero(k, j);
  return vals;
}

bool JetPoint::operator==(const JetPoint& o) const {
  return order_ == o.order_ && x_ == o.x_ && y_ == o.y_ && u_ == o.u_ &&
         derivs_ == o.derivs_;
}

bool SymTensorK::is_zero() const {
  for (const auto& v : c)
    if (!v.is_zero()) return false;
  return true;
}

JetPoint jet_of_surface(const TaylorMap& f, int k) {
  if (f.order() < k) throw OrderTooLow();
  JetPoint j(k, f.x0(), f.y0(), f.value_at_base());
  Rational fact[7] = {1, 1, 2, 6, 24, 120, 720};
  for (int o = 1; o <= k; ++o)
    for (int jy = 0; jy <= o; ++jy)
      j.set(o, jy, f.coeff(o - jy, jy) * Scalar(fact[o - jy] * fact[jy]));
  return j;
}

Poly total_derivative(const Poly& p, char direction, int k) {
  if (direction != 'x' && direction != 'y')
    throw std::invalid_argument("total_derivative: direction must be x or y");
  if (k < 1 || k > 5 || p.max_jet_order() > k - 1) throw OrderOverflow();
  int dy = direction == 'y' ? 1 : 0;
  Poly out = p.derivative(direction == 'x' ? VX : VY);
  out += Poly::variable(jet_var(1, dy)) * p.derivative(VU);
  for (int o = 1; o <= k - 1; ++o)
    for (int jy = 0; jy <= o; ++jy)
      out += Poly::variable(jet_var(o + 1, jy + dy)) *
             p.derivative(jet_var(o, jy));
  return out;
}

JetPoint project(const JetPoint& j, int m) {
  if (m > j.order()) throw OrderTooHigh();
  JetPoint out(m, j.x(), j.y(), j.u());
  for (int k = 1; k <= m; ++k)
    for (int jy = 0; jy <= k; ++jy) out.set(k, jy, j.d_or_zero(k, jy));
  return out;
}

SymTensorK vertical_difference(const JetPoint& j1, const JetPoint& j2,
                               double tol) {
  int k = j1.order();
  if (k != j2.order() || k < 2) throw NotSameFiber();
  auto same = [&](const Scalar& a, const Scalar& b) {
    if (a.exact() && b.exact()) return a == b;
    return std::abs(a.value() - b.value()) <= tol;
  };
  if (!same(j1.x(), j2.x()) || !same(j1.y(), j2.y()) || !same(j1.u(), j2.u()))
    throw NotSameFiber();
  for (int o = 1; o < k; ++o)
    for (int jy = 0; jy <= o; ++jy)
      if (!same(j1.d_or_zero(o, jy), j2.d_or_zero(o, jy)))
        throw NotSameFiber();
  SymTensorK t(k);
  for (int jy = 0; jy <= k; ++jy)
    t.c[jy] = j1.d_or_zero(k, jy) - j2.d_or_zero(k, jy);
  return t;
}

Scalar hessian_det(const JetPoint& j) {
  if (j.order() < 2) throw OrderTooLow();
  Scalar uxx = j.d_or_zero(2, 0), uxy = j.d_or_zero(2, 1),
         uyy = j.d_or_zero(2, 2);
  return uxx * uyy - uxy * uxy;
}

Region classify_fiber(const JetPoint& j) {
  int s = hessian_det(j).sign();
  return s > 0 ? Region::plus : (s < 0 ? Region::minus : Region::degenerate);
}

}  // namespace affinv
