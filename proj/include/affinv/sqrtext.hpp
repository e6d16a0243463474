#ifndef AFFINV_SQRTEXT_HPP
#define AFFINV_SQRTEXT_HPP

#include <map>

#include "affinv/poly.hpp"

namespace affinv {

/// Element a + b*s of the quadratic extension with s^2 = u_xy^2 - u_xx*u_yy.
/// Multiplication reduces every s power >= 2 through the defining relation.
struct SqrtExt {
  Poly re;
  Poly im;

  SqrtExt() = default;
  SqrtExt(Poly r, Poly i) : re(std::move(r)), im(std::move(i)) {}
  static SqrtExt s() { return SqrtExt(Poly(), Poly::constant(1)); }
  static SqrtExt from_poly(Poly p) { return SqrtExt(std::move(p), Poly()); }

  /// The reduced value of s^2 as a plain polynomial.
  static Poly s_squared();

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool s_free() const { return im.is_zero(); }

  SqrtExt conj() const { return SqrtExt(re, -im); }
  /// re^2 - im^2 * (u_xy^2 - u_xx u_yy); always s-free.
  Poly norm() const;

  friend SqrtExt operator+(const SqrtExt& a, const SqrtExt& b) {
    return SqrtExt(a.re + b.re, a.im + b.im);
  }
  friend SqrtExt operator-(const SqrtExt& a, const SqrtExt& b) {
    return SqrtExt(a.re - b.re, a.im - b.im);
  }
  friend SqrtExt operator*(const SqrtExt& a, const SqrtExt& b);
  SqrtExt operator-() const { return SqrtExt(-re, -im); }
  bool operator==(const SqrtExt& o) const { return re == o.re && im == o.im; }

  /// Quotient q with *this = q * d, computed through the conjugate;
  /// throws DivisionNotExact if the division fails in either component.
  SqrtExt exact_divide(const SqrtExt& d) const;
};

/// Finite sum c_e * r^(e/4) with r = det Hess = u_xx u_yy - u_xy^2 and
/// integer (possibly negative) quarter-power exponents e.
class GradedRho {
 public:
  GradedRho() = default;
  explicit GradedRho(Poly p) { set(0, std::move(p)); }
  static GradedRho quarter_power(int e) {
    GradedRho g;
    g.set(e, Poly::constant(1));
    return g;
  }
  static Poly r();  // det Hess as a Poly

  void set(int e, Poly c);
  const std::map<int, Poly>& parts() const { return parts_; }
  bool is_zero() const { return parts_.empty(); }

  /// Within each residue class mod 4, multiply by r to push everything to
  /// the lowest exponent present (r^(4/4) merges with the polynomial part).
  GradedRho normalized() const;

  friend GradedRho operator+(const GradedRho& a, const GradedRho& b);
  friend GradedRho operator-(const GradedRho& a, const GradedRho& b);
  friend GradedRho operator*(const GradedRho& a, const GradedRho& b);
  GradedRho operator-() const;
  GradedRho scaled(const Rational& c) const;

 private:
  std::map<int, Poly> parts_;
};

}  // namespace affinv

#endif
