#include "affinv/sqrtext.hpp"

namespace affinv {

Poly SqrtExt::s_squared() {
  Poly uxx = Poly::variable(VUXX), uxy = Poly::variable(VUXY),
       uyy = Poly::variable(VUYY);
  return uxy * uxy - uxx * uyy;
}

Poly SqrtExt::norm() const {
  return re * re - im * im * s_squared();
}

SqrtExt operator*(const SqrtExt& a, const SqrtExt& b) {
  return SqrtExt(a.re * b.re + a.im * b.im * SqrtExt::s_squared(),
                 a.re * b.im + a.im * b.re);
}

SqrtExt SqrtExt::exact_divide(const SqrtExt& d) const {
  if (d.is_zero()) throw PolyDivisionByZero();
  SqrtExt num = *this * d.conj();
  Poly den = d.norm();
  return SqrtExt(num.re.exact_divide(den), num.im.exact_divide(den));
}

Poly GradedRho::r() {
  Poly uxx = Poly::variable(VUXX), uxy = Poly::variable(VUXY),
       uyy = Poly::variable(VUYY);
  return uxx * uyy - uxy * uxy;
}

void GradedRho::set(int e, Poly c) {
  if (c.is_zero())
    parts_.erase(e);
  else
    parts_[e] = std::move(c);
}

GradedRho GradedRho::normalized() const {
  // Lowest exponent per residue class wins; higher ones fold down via r.
  std::map<int, int> lowest;
  for (const auto& [e, c] : parts_) {
    int cls = ((e % 4) + 4) % 4;
    auto it = lowest.find(cls);
    if (it == lowest.end() || e < it->second) lowest[cls] = e;
  }
  for (auto& [cls, e] : lowest) e = std::min(e, cls);
  GradedRho out;
  Poly det = r();
  for (const auto& [e, c] : parts_) {
    int cls = ((e % 4) + 4) % 4;
    int target = lowest[cls];
    Poly folded = c;
    for (int k = e; k > target; k -= 4) folded *= det;
    auto it = out.parts_.find(target);
    if (it == out.parts_.end())
      out.parts_[target] = folded;
    else
      it->second += folded;
  }
  for (auto it = out.parts_.begin(); it != out.parts_.end();)
    it = it->second.is_zero() ? out.parts_.erase(it) : std::next(it);
  return out;
}

GradedRho operator+(const GradedRho& a, const GradedRho& b) {
  GradedRho out = a;
  for (const auto& [e, c] : b.parts_) {
    auto it = out.parts_.find(e);
    if (it == out.parts_.end())
      out.parts_[e] = c;
    else {
      it->second += c;
      if (it->second.is_zero()) out.parts_.erase(it);
    }
  }
  return out.normalized();
}

GradedRho operator-(const GradedRho& a, const GradedRho& b) {
  return a + (-b);
}

GradedRho operator*(const GradedRho& a, const GradedRho& b) {
  GradedRho out;
  for (const auto& [ea, ca] : a.parts_) {
    for (const auto& [eb, cb] : b.parts_) {
      int e = ea + eb;
      Poly prod = ca * cb;
      auto it = out.parts_.find(e);
      if (it == out.parts_.end())
        out.parts_[e] = prod;
      else
        it->second += prod;
    }
  }
  for (auto it = out.parts_.begin(); it != out.parts_.end();)
    it = it->second.is_zero() ? out.parts_.erase(it) : std::next(it);
  return out.normalized();
}

GradedRho GradedRho::operator-() const {
  GradedRho out;
  for (const auto& [e, c] : parts_) out.parts_[e] = -c;
  return out;
}

GradedRho GradedRho::scaled(const Rational& c) const {
  GradedRho out;
  if (c == 0) return out;
  for (const auto& [e, p] : parts_) out.parts_[e] = p.scaled(c);
  return out;
}

}  // namespace affinv
