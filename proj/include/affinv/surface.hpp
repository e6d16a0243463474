#ifndef AFFINV_SURFACE_HPP
#define AFFINV_SURFACE_HPP

#include <memory>
#include <string>
#include <vector>

#include "affinv/taylor.hpp"

namespace affinv {

struct ParseError : std::runtime_error {
  size_t pos;
  ParseError(const std::string& what, size_t p)
      : std::runtime_error(what + " at position " + std::to_string(p)),
        pos(p) {}
};
struct EvalError : std::runtime_error {
  explicit EvalError(const std::string& what) : std::runtime_error(what) {}
};

/// Syntax tree of a surface expression u = f(x, y).
struct SurfaceExpr {
  enum class Kind { number, var_x, var_y, add, sub, mul, div, neg, pow, sqrt };

  Kind kind = Kind::number;
  Rational value;  // number
  int exponent = 1;  // pow
  std::shared_ptr<const SurfaceExpr> lhs, rhs;
};

SurfaceExpr parse_surface(const std::string& text);

/// Taylor expansion of the expression at the base point to the given order.
TaylorMap surface_taylor(const SurfaceExpr& e, const Scalar& x0,
                         const Scalar& y0, int order);

}  // namespace affinv

#endif
