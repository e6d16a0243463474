#include "affinv/scalar.hpp"

#include <sstream>

namespace affinv {

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(BigInt(text));
  BigInt num(text.substr(0, slash));
  BigInt den(text.substr(slash + 1));
  if (den == 0) throw ScalarDivisionByZero();
  return Rational(num, den);
}

bool rational_sqrt(const Rational& q, Rational* root) {
  if (q < 0) return false;
  BigInt n = numerator(q), d = denominator(q);
  BigInt sn = boost::multiprecision::sqrt(n);
  BigInt sd = boost::multiprecision::sqrt(d);
  if (sn * sn != n || sd * sd != d) return false;
  if (root) *root = Rational(sn, sd);
  return true;
}

std::string Scalar::str() const {
  if (exact_) return rational_to_string(rat_);
  std::ostringstream os;
  os.precision(17);
  os << dbl_;
  return os.str();
}

}  // namespace affinv
