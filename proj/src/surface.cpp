#include "affinv/surface.hpp"

#include <cctype>
#include <cmath>

namespace affinv {

namespace {

using Node = std::shared_ptr<const SurfaceExpr>;

Node make(SurfaceExpr::Kind k, Node l = nullptr, Node r = nullptr) {
  auto n = std::make_shared<SurfaceExpr>();
  n->kind = k;
  n->lhs = std::move(l);
  n->rhs = std::move(r);
  return n;
}

struct Parser {
  const std::string& s;
  size_t i = 0;

  void skip() {
    while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
  }

  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }

  bool eat_word(const char* w) {
    skip();
    size_t n = std::string(w).size();
    if (s.compare(i, n, w) == 0) {
      i += n;
      return true;
    }
    return false;
  }

  std::string digits() {
    size_t j = i;
    while (j < s.size() && std::isdigit((unsigned char)s[j])) ++j;
    std::string d = s.substr(i, j - i);
    i = j;
    return d;
  }

  Node expr() {
    Node r = term();
    for (;;) {
      if (eat('+'))
        r = make(SurfaceExpr::Kind::add, r, term());
      else if (eat('-'))
        r = make(SurfaceExpr::Kind::sub, r, term());
      else
        return r;
    }
  }

  Node term() {
    Node r = factor();
    for (;;) {
      if (eat('*'))
        r = make(SurfaceExpr::Kind::mul, r, factor());
      else if (eat('/'))
        r = make(SurfaceExpr::Kind::div, r, factor());
      else
        return r;
    }
  }

  Node factor() {
    Node b = base();
    if (eat('^')) {
      skip();
      bool neg = eat('-');
      skip();
      std::string d = digits();
      if (d.empty()) throw ParseError("integer exponent expected", i);
      auto n = std::make_shared<SurfaceExpr>();
      n->kind = SurfaceExpr::Kind::pow;
      n->exponent = (neg ? -1 : 1) * std::stoi(d);
      n->lhs = b;
      return n;
    }
    return b;
  }

  Node base() {
    skip();
    if (i >= s.size()) throw ParseError("unexpected end of input", i);
    if (eat('-')) return make(SurfaceExpr::Kind::neg, base());
    if (eat_word("sqrt(")) {
      Node r = expr();
      if (!eat(')')) throw ParseError("')' expected", i);
      return make(SurfaceExpr::Kind::sqrt, r);
    }
    if (eat('(')) {
      Node r = expr();
      if (!eat(')')) throw ParseError("')' expected", i);
      return r;
    }
    char c = s[i];
    if (c == 'x' || c == 'y') {
      ++i;
      return make(c == 'x' ? SurfaceExpr::Kind::var_x
                           : SurfaceExpr::Kind::var_y);
    }
    if (std::isdigit((unsigned char)c)) {
      std::string num = digits();
      auto n = std::make_shared<SurfaceExpr>();
      n->kind = SurfaceExpr::Kind::number;
      // contiguous p/q is a rational literal
      if (i < s.size() && s[i] == '/' && i + 1 < s.size() &&
          std::isdigit((unsigned char)s[i + 1])) {
        ++i;
        std::string den = digits();
        n->value = Rational(BigInt(num), BigInt(den));
      } else {
        n->value = Rational(BigInt(num));
      }
      return n;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", i);
  }
};

TaylorMap eval_node(const SurfaceExpr& e, const Scalar& x0, const Scalar& y0,
                    int order) {
  using K = SurfaceExpr::Kind;
  auto sub = [&](const Node& n) { return eval_node(*n, x0, y0, order); };
  switch (e.kind) {
    case K::number:
      return TaylorMap::constant(Scalar(e.value), x0, y0, order);
    case K::var_x:
      return TaylorMap::coordinate(0, x0, y0, order);
    case K::var_y:
      return TaylorMap::coordinate(1, x0, y0, order);
    case K::add:
      return sub(e.lhs) + sub(e.rhs);
    case K::sub:
      return sub(e.lhs) - sub(e.rhs);
    case K::mul:
      return sub(e.lhs) * sub(e.rhs);
    case K::div: {
      TaylorMap d = sub(e.rhs);
      if (d.value_at_base().is_zero()) throw EvalError("division by zero");
      return sub(e.lhs) * d.reciprocal();
    }
    case K::neg:
      return -sub(e.lhs);
    case K::pow: {
      TaylorMap b = sub(e.lhs);
      if (e.exponent >= 0) return b.pow(e.exponent);
      if (b.value_at_base().is_zero()) throw EvalError("division by zero");
      return b.reciprocal().pow(-e.exponent);
    }
    case K::sqrt: {
      TaylorMap r = sub(e.lhs);
      Scalar v = r.value_at_base();
      if (v.sign() < 0) throw EvalError("negative radicand");
      if (v.is_zero()) throw EvalError("sqrt at a branch point");
      try {
        return r.sqrt();
      } catch (const NonSquareRational&) {
        return r.to_float().sqrt();
      }
    }
  }
  throw EvalError("malformed expression");
}

}  // namespace

SurfaceExpr parse_surface(const std::string& text) {
  Parser p{text};
  Node root = p.expr();
  p.skip();
  if (p.i != text.size()) throw ParseError("trailing input", p.i);
  return *root;
}

TaylorMap surface_taylor(const SurfaceExpr& e, const Scalar& x0,
                         const Scalar& y0, int order) {
  return eval_node(e, x0, y0, order);
}

}  // namespace affinv
