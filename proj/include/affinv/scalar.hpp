#ifndef AFFINV_SCALAR_HPP
#define AFFINV_SCALAR_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace affinv {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct NonFiniteValue : std::runtime_error {
  NonFiniteValue() : std::runtime_error("non-finite float value") {}
};
struct NegativeRadicand : std::runtime_error {
  NegativeRadicand() : std::runtime_error("negative radicand") {}
};
struct NonSquareRational : std::runtime_error {
  NonSquareRational() : std::runtime_error("rational is not a perfect square") {}
};
struct ScalarDivisionByZero : std::runtime_error {
  ScalarDivisionByZero() : std::runtime_error("division by zero") {}
};

inline std::string rational_to_string(const Rational& q) {
  std::string s = numerator(q).str();
  if (denominator(q) != 1) s += "/" + denominator(q).str();
  return s;
}

Rational parse_rational(const std::string& text);

/// True iff q = p^2 for some rational p; if so p (>= 0) is stored in *root.
bool rational_sqrt(const Rational& q, Rational* root);

/// Exact rational or IEEE double, promoted to float on mixed arithmetic.
/// Float values are required to be finite at every construction point.
class Scalar {
 public:
  Scalar() : exact_(true), rat_(0), dbl_(0) {}
  Scalar(int v) : exact_(true), rat_(v), dbl_(0) {}
  Scalar(long v) : exact_(true), rat_(v), dbl_(0) {}
  Scalar(Rational v) : exact_(true), rat_(std::move(v)), dbl_(0) {}
  Scalar(const BigInt& n, const BigInt& d) : exact_(true), rat_(Rational(n, d)), dbl_(0) {}

  static Scalar from_double(double v) {
    if (!std::isfinite(v)) throw NonFiniteValue();
    Scalar s;
    s.exact_ = false;
    s.dbl_ = v;
    return s;
  }

  bool exact() const { return exact_; }
  const Rational& rat() const {
    if (!exact_) throw std::logic_error("Scalar::rat on float value");
    return rat_;
  }
  double value() const { return exact_ ? static_cast<double>(rat_) : dbl_; }
  Scalar to_float() const { return from_double(value()); }

  bool is_zero() const { return exact_ ? rat_ == 0 : dbl_ == 0.0; }
  int sign() const {
    if (exact_) return rat_ == 0 ? 0 : (rat_ > 0 ? 1 : -1);
    return dbl_ == 0.0 ? 0 : (dbl_ > 0 ? 1 : -1);
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_) return Scalar(a.rat_ + b.rat_);
    return from_double(a.value() + b.value());
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_) return Scalar(a.rat_ - b.rat_);
    return from_double(a.value() - b.value());
  }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_) return Scalar(a.rat_ * b.rat_);
    return from_double(a.value() * b.value());
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    if (b.is_zero()) throw ScalarDivisionByZero();
    if (a.exact_ && b.exact_) return Scalar(a.rat_ / b.rat_);
    return from_double(a.value() / b.value());
  }
  Scalar operator-() const {
    return exact_ ? Scalar(Rational(-rat_)) : from_double(-dbl_);
  }
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  Scalar abs() const {
    return sign() < 0 ? -*this : *this;
  }

  /// Exact mode demands a perfect rational square; float mode a nonnegative value.
  Scalar sqrt() const {
    if (sign() < 0) throw NegativeRadicand();
    if (exact_) {
      Rational r;
      if (!rational_sqrt(rat_, &r)) throw NonSquareRational();
      return Scalar(r);
    }
    return from_double(std::sqrt(dbl_));
  }

  bool operator==(const Scalar& o) const {
    if (exact_ && o.exact_) return rat_ == o.rat_;
    return value() == o.value();
  }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  /// Serialized form: "p/q" for exact values, plain decimal for floats.
  std::string str() const;

 private:
  bool exact_;
  Rational rat_;
  double dbl_;
};

inline bool close(const Scalar& a, const Scalar& b, double tol) {
  return std::abs(a.value() - b.value()) <= tol;
}

}  // namespace affinv

#endif
