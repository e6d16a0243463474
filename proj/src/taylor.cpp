#include "affinv/taylor.hpp"

#include <cmath>

namespace affinv {

TaylorMap::TaylorMap(Scalar x0, Scalar y0, int order)
    : x0_(std::move(x0)), y0_(std::move(y0)), order_(order) {
  if (order < 0 || order > kMaxOrder)
    throw std::invalid_argument("TaylorMap: order out of range");
}

TaylorMap TaylorMap::constant(Scalar c, Scalar x0, Scalar y0, int order) {
  TaylorMap t(std::move(x0), std::move(y0), order);
  t.set_coeff(0, 0, c);
  return t;
}

TaylorMap TaylorMap::coordinate(int which, Scalar x0, Scalar y0, int order) {
  TaylorMap t(x0, y0, order);
  t.set_coeff(0, 0, which == 0 ? t.x0_ : t.y0_);
  if (which == 0)
    t.set_coeff(1, 0, Scalar(1));
  else
    t.set_coeff(0, 1, Scalar(1));
  return t;
}

Scalar TaylorMap::coeff(int i, int j) const {
  auto it = coeffs_.find({i, j});
  return it == coeffs_.end() ? Scalar(0) : it->second;
}

void TaylorMap::set_coeff(int i, int j, const Scalar& c) {
  if (i < 0 || j < 0 || i + j > order_)
    throw std::out_of_range("TaylorMap::set_coeff");
  if (c.is_zero())
    coeffs_.erase({i, j});
  else
    coeffs_[{i, j}] = c;
}

namespace {
void check_same_chart(const TaylorMap& a, const TaylorMap& b) {
  if (a.x0() != b.x0() || a.y0() != b.y0())
    throw BaseMismatch();
}
}  // namespace

TaylorMap operator+(const TaylorMap& a, const TaylorMap& b) {
  check_same_chart(a, b);
  TaylorMap r(a.x0(), a.y0(), std::min(a.order(), b.order()));
  for (const auto& [k, c] : a.coeffs_)
    if (k.first + k.second <= r.order_) r.set_coeff(k.first, k.second, c);
  for (const auto& [k, c] : b.coeffs_)
    if (k.first + k.second <= r.order_)
      r.set_coeff(k.first, k.second, r.coeff(k.first, k.second) + c);
  return r;
}

TaylorMap operator-(const TaylorMap& a, const TaylorMap& b) {
  return a + (-b);
}

TaylorMap TaylorMap::operator-() const {
  TaylorMap r(x0_, y0_, order_);
  for (const auto& [k, c] : coeffs_) r.coeffs_[k] = -c;
  return r;
}

TaylorMap operator*(const TaylorMap& a, const TaylorMap& b) {
  check_same_chart(a, b);
  TaylorMap r(a.x0(), a.y0(), std::min(a.order(), b.order()));
  for (const auto& [ka, ca] : a.coeffs_) {
    for (const auto& [kb, cb] : b.coeffs_) {
      int i = ka.first + kb.first, j = ka.second + kb.second;
      if (i + j > r.order_) continue;
      r.set_coeff(i, j, r.coeff(i, j) + ca * cb);
    }
  }
  return r;
}

TaylorMap TaylorMap::scaled(const Scalar& c) const {
  TaylorMap r(x0_, y0_, order_);
  if (c.is_zero()) return r;
  for (const auto& [k, co] : coeffs_) r.coeffs_[k] = co * c;
  return r;
}

TaylorMap TaylorMap::pow(int n) const {
  if (n < 0) throw std::invalid_argument("TaylorMap::pow: negative exponent");
  TaylorMap r = constant(Scalar(1), x0_, y0_, order_);
  for (int i = 0; i < n; ++i) r *= *this;
  return r;
}

TaylorMap TaylorMap::derivative(int which) const {
  TaylorMap r(x0_, y0_, order_);
  for (const auto& [k, c] : coeffs_) {
    int i = k.first, j = k.second;
    if (which == 0 && i > 0)
      r.set_coeff(i - 1, j, c * Scalar(i));
    else if (which == 1 && j > 0)
      r.set_coeff(i, j - 1, c * Scalar(j));
  }
  return r;
}

TaylorMap TaylorMap::compose(const TaylorMap& g1, const TaylorMap& g2) const {
  check_same_chart(g1, g2);
  int ord = std::min({order_, g1.order(), g2.order()});
  Scalar d1 = g1.value_at_base() - x0_;
  Scalar d2 = g2.value_at_base() - y0_;
  bool exact = d1.exact() && d2.exact();
  double tol = 1e-9;
  if (exact ? !(d1.is_zero() && d2.is_zero())
            : (std::abs(d1.value()) > tol || std::abs(d2.value()) > tol))
    throw BaseMismatch();

  TaylorMap dx = g1;
  dx.set_coeff(0, 0, Scalar(0));
  TaylorMap dy = g2;
  dy.set_coeff(0, 0, Scalar(0));

  TaylorMap out(g1.x0(), g1.y0(), ord);
  TaylorMap px = TaylorMap::constant(Scalar(1), g1.x0(), g1.y0(), ord);
  for (int i = 0; i <= ord; ++i) {
    TaylorMap pxy = px;
    for (int j = 0; i + j <= ord; ++j) {
      Scalar c = coeff(i, j);
      if (!c.is_zero()) out += pxy.scaled(c);
      if (i + j < ord) pxy *= dy;
    }
    if (i < ord) px *= dx;
  }
  return out;
}

std::pair<TaylorMap, TaylorMap> TaylorMap::invert2d(const TaylorMap& g1,
                                                     const TaylorMap& g2) {
  check_same_chart(g1, g2);
  int ord = std::min(g1.order(), g2.order());
  Scalar a = g1.coeff(1, 0), b = g1.coeff(0, 1);
  Scalar c = g2.coeff(1, 0), d = g2.coeff(0, 1);
  Scalar det = a * d - b * c;
  if (det.is_zero()) throw SingularJacobian();

  Scalar X0 = g1.value_at_base(), Y0 = g2.value_at_base();
  // Increments of g beyond the linear approximation, as series in (dx, dy)
  // at a formal origin.
  TaylorMap n1(Scalar(0), Scalar(0), ord), n2(Scalar(0), Scalar(0), ord);
  for (const auto& [k, co] : g1.coeffs_)
    if (k.first + k.second >= 2) n1.set_coeff(k.first, k.second, co);
  for (const auto& [k, co] : g2.coeffs_)
    if (k.first + k.second >= 2) n2.set_coeff(k.first, k.second, co);

  // delta = (X - X0, Y - Y0) as series at the image base point.
  TaylorMap dX = coordinate(0, X0, Y0, ord) - constant(X0, X0, Y0, ord);
  TaylorMap dY = coordinate(1, X0, Y0, ord) - constant(Y0, X0, Y0, ord);
  auto linsolve = [&](const TaylorMap& r1, const TaylorMap& r2) {
    TaylorMap hx = (r1.scaled(d) - r2.scaled(b)).scaled(Scalar(1) / det);
    TaylorMap hy = (r2.scaled(a) - r1.scaled(c)).scaled(Scalar(1) / det);
    return std::pair<TaylorMap, TaylorMap>(hx, hy);
  };
  auto [hx, hy] = linsolve(dX, dY);
  for (int it = 0; it < ord; ++it) {
    TaylorMap r1 = dX - n1.compose(hx, hy);
    TaylorMap r2 = dY - n2.compose(hx, hy);
    std::tie(hx, hy) = linsolve(r1, r2);
  }
  TaylorMap out1 = hx + constant(g1.x0(), X0, Y0, ord);
  TaylorMap out2 = hy + constant(g1.y0(), X0, Y0, ord);
  return {out1, out2};
}

TaylorMap TaylorMap::reciprocal() const {
  Scalar c0 = value_at_base();
  if (c0.is_zero()) throw ZeroConstantTerm();
  TaylorMap t = scaled(Scalar(1) / c0);
  t.set_coeff(0, 0, Scalar(0));
  TaylorMap out = constant(Scalar(1), x0_, y0_, order_);
  TaylorMap p = constant(Scalar(1), x0_, y0_, order_);
  for (int n = 1; n <= order_; ++n) {
    p *= t;
    out += (n % 2 ? -p : p);
  }
  return out.scaled(Scalar(1) / c0);
}

TaylorMap TaylorMap::sqrt() const {
  Scalar c0 = value_at_base();
  if (c0.sign() <= 0) throw NegativeRadicand();
  Scalar s0 = c0.sqrt();
  TaylorMap t = scaled(Scalar(1) / c0);
  t.set_coeff(0, 0, Scalar(0));
  TaylorMap out = constant(Scalar(1), x0_, y0_, order_);
  TaylorMap p = constant(Scalar(1), x0_, y0_, order_);
  Rational binom = 1;  // C(1/2, n)
  for (int n = 1; n <= order_; ++n) {
    binom *= Rational(3 - 2 * n, 2 * n);  // (1/2 - (n-1)) / n
    p *= t;
    out += p.scaled(Scalar(binom));
  }
  return out.scaled(s0);
}

Scalar TaylorMap::eval(const Scalar& x, const Scalar& y) const {
  Scalar dx = x - x0_, dy = y - y0_;
  Scalar total(0);
  for (const auto& [k, c] : coeffs_) {
    Scalar t = c;
    for (int i = 0; i < k.first; ++i) t *= dx;
    for (int j = 0; j < k.second; ++j) t *= dy;
    total += t;
  }
  return total;
}

bool TaylorMap::all_exact() const {
  if (!x0_.exact() || !y0_.exact()) return false;
  for (const auto& [k, c] : coeffs_)
    if (!c.exact()) return false;
  return true;
}

TaylorMap TaylorMap::to_float() const {
  TaylorMap r(x0_.to_float(), y0_.to_float(), order_);
  for (const auto& [k, c] : coeffs_) r.coeffs_[k] = c.to_float();
  return r;
}

}  // namespace affinv
