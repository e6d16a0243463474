#include "affinv/poly.hpp"

#include <sstream>

namespace affinv {

const std::array<const char*, kNumVars> kVarNames = {
    "x",       "y",       "u",       "u_x",     "u_y",     "u_xx",   "u_xy",
    "u_yy",    "u_xxx",   "u_xxy",   "u_xyy",   "u_yyy",   "u_xxxx", "u_xxxy",
    "u_xxyy",  "u_xyyy",  "u_yyyy",  "u_xxxxx", "u_xxxxy", "u_xxxyy",
    "u_xxyyy", "u_xyyyy", "u_yyyyy", "eta1",    "eta2",    "a11",    "a12",
    "a22"};

namespace {
constexpr int kJetBase[6] = {VU, VUX, VUXX, VUXXX, VUXXXX, VUXXXXX};
}

int jet_var(int order, int ycount) {
  if (order < 0 || order > 5 || ycount < 0 || ycount > order)
    throw std::out_of_range("jet_var: bad order/ycount");
  return kJetBase[order] + ycount;
}

int var_jet_order(int var) {
  if (var < VU || var > VUYYYYY) return -1;
  for (int o = 5; o >= 0; --o)
    if (var >= kJetBase[o]) return o;
  return -1;
}

int var_ycount(int var) {
  int o = var_jet_order(var);
  if (o < 0) throw std::out_of_range("var_ycount: not a jet variable");
  return var - kJetBase[o];
}

int var_index(std::string_view name) {
  for (int i = 0; i < kNumVars; ++i)
    if (name == kVarNames[i]) return i;
  return -1;
}

Poly::Poly(const Rational& c) {
  if (c != 0) terms_[Mono{}] = c;
}

Poly Poly::variable(int var) {
  if (var < 0 || var >= kNumVars) throw std::out_of_range("Poly::variable");
  Poly p;
  Mono m{};
  m[var] = 1;
  p.terms_[m] = 1;
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && terms_.begin()->first == Mono{});
}

int Poly::total_degree() const {
  return terms_.empty() ? -1 : mono_degree(terms_.begin()->first);
}

int Poly::degree_in(int var) const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, int(m[var]));
  return d;
}

int Poly::max_jet_order() const {
  int best = -1;
  for (const auto& [m, c] : terms_)
    for (int v = 0; v < kNumVars; ++v)
      if (m[v]) best = std::max(best, var_jet_order(v));
  return best;
}

void Poly::add_term(const Mono& m, const Rational& c) {
  if (c == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_[m] = c;
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly operator+(const Poly& a, const Poly& b) {
  Poly r = a;
  for (const auto& [m, c] : b.terms_) r.add_term(m, c);
  return r;
}

Poly operator-(const Poly& a, const Poly& b) {
  Poly r = a;
  for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      Mono m;
      for (int i = 0; i < kNumVars; ++i) {
        int e = int(ma[i]) + int(mb[i]);
        if (e > 255) throw std::overflow_error("monomial exponent overflow");
        m[i] = std::uint8_t(e);
      }
      r.add_term(m, ca * cb);
    }
  }
  return r;
}

Poly Poly::operator-() const {
  Poly r;
  for (const auto& [m, c] : terms_) r.terms_[m] = -c;
  return r;
}

Poly Poly::scaled(const Rational& c) const {
  Poly r;
  if (c == 0) return r;
  for (const auto& [m, co] : terms_) r.terms_[m] = co * c;
  return r;
}

Poly Poly::pow(int n) const {
  if (n < 0) throw std::invalid_argument("Poly::pow: negative exponent");
  Poly r = Poly::constant(1);
  Poly base = *this;
  while (n > 0) {
    if (n & 1) r *= base;
    base = (n >>= 1) ? base * base : base;
  }
  return r;
}

Poly Poly::derivative(int var) const {
  Poly r;
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Mono d = m;
    d[var] -= 1;
    r.add_term(d, c * m[var]);
  }
  return r;
}

Poly Poly::substituted(int var, const Poly& value) const {
  // Horner-style by descending power of var.
  int deg = degree_in(var);
  if (deg == 0) return *this;
  std::vector<Poly> coeff(deg + 1);
  for (const auto& [m, c] : terms_) {
    Mono rest = m;
    int e = rest[var];
    rest[var] = 0;
    coeff[e].add_term(rest, c);
  }
  Poly r = coeff[deg];
  for (int e = deg - 1; e >= 0; --e) r = r * value + coeff[e];
  return r;
}

Scalar Poly::eval(const std::vector<Scalar>& values) const {
  if (values.size() != kNumVars)
    throw std::invalid_argument("Poly::eval: wrong assignment size");
  Scalar total(0);
  for (const auto& [m, c] : terms_) {
    Scalar t{Rational(c)};
    for (int v = 0; v < kNumVars; ++v)
      for (int e = 0; e < m[v]; ++e) t *= values[v];
    total += t;
  }
  return total;
}

Rational Poly::eval_rational(const std::vector<Rational>& values) const {
  if (values.size() != kNumVars)
    throw std::invalid_argument("Poly::eval_rational: wrong assignment size");
  Rational total = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (int v = 0; v < kNumVars; ++v)
      for (int e = 0; e < m[v]; ++e) t *= values[v];
    total += t;
  }
  return total;
}

Poly Poly::exact_divide(const Poly& divisor) const {
  if (divisor.is_zero()) throw PolyDivisionByZero();
  Poly rem = *this;
  Poly quot;
  const auto& [lm, lc] = *divisor.terms_.begin();
  while (!rem.is_zero()) {
    const auto& [rm, rc] = *rem.terms_.begin();
    Mono qm;
    for (int i = 0; i < kNumVars; ++i) {
      if (rm[i] < lm[i]) throw DivisionNotExact();
      qm[i] = rm[i] - lm[i];
    }
    Rational qc = rc / lc;
    Poly qt;
    qt.terms_[qm] = qc;
    quot.add_term(qm, qc);
    rem -= qt * divisor;
  }
  return quot;
}

bool Poly::divisible_by(const Poly& divisor) const {
  try {
    exact_divide(divisor);
    return true;
  } catch (const DivisionNotExact&) {
    return false;
  }
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational a = c;
    if (first) {
      if (a < 0) {
        os << "-";
        a = -a;
      }
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    first = false;
    bool any_var = (m != Mono{});
    bool printed = false;
    if (a != 1 || !any_var) {
      os << rational_to_string(a);
      printed = true;
    }
    for (int v = 0; v < kNumVars; ++v) {
      if (!m[v]) continue;
      if (printed) os << "*";
      os << kVarNames[v];
      if (m[v] > 1) os << "^" << int(m[v]);
      printed = true;
    }
  }
  return os.str();
}

Poly parse_poly(const std::string& text) {
  // Tiny recursive-descent parser over the fixed variable names; used by
  // tests and the symmetry CLI. Grammar mirrors the surface parser but
  // admits every variable of the universe.
  struct P {
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
    Poly expr() {
      Poly r = term();
      for (;;) {
        skip();
        if (eat('+'))
          r += term();
        else if (eat('-'))
          r -= term();
        else
          return r;
      }
    }
    Poly term() {
      Poly r = factor();
      for (;;) {
        skip();
        if (eat('*'))
          r *= factor();
        else
          return r;
      }
    }
    Poly factor() {
      Poly b = base();
      skip();
      if (eat('^')) {
        skip();
        size_t j = i;
        while (j < s.size() && std::isdigit((unsigned char)s[j])) ++j;
        if (j == i) throw std::invalid_argument("parse_poly: exponent expected");
        int e = std::stoi(s.substr(i, j - i));
        i = j;
        return b.pow(e);
      }
      return b;
    }
    Poly base() {
      skip();
      if (eat('-')) return -base();
      if (eat('(')) {
        Poly r = expr();
        if (!eat(')')) throw std::invalid_argument("parse_poly: ')' expected");
        return r;
      }
      if (i >= s.size()) throw std::invalid_argument("parse_poly: unexpected end");
      if (std::isdigit((unsigned char)s[i])) {
        size_t j = i;
        while (j < s.size() && std::isdigit((unsigned char)s[j])) ++j;
        std::string num = s.substr(i, j - i);
        i = j;
        if (eat('/')) {
          skip();
          size_t k = i;
          while (k < s.size() && std::isdigit((unsigned char)s[k])) ++k;
          if (k == i) throw std::invalid_argument("parse_poly: denominator expected");
          std::string den = s.substr(i, k - i);
          i = k;
          return Poly(Rational(BigInt(num), BigInt(den)));
        }
        return Poly(Rational(BigInt(num)));
      }
      size_t j = i;
      while (j < s.size() &&
             (std::isalnum((unsigned char)s[j]) || s[j] == '_'))
        ++j;
      std::string name = s.substr(i, j - i);
      int v = var_index(name);
      if (v < 0)
        throw std::invalid_argument("parse_poly: unknown variable '" + name + "'");
      i = j;
      return Poly::variable(v);
    }
  } p{text};
  Poly r = p.expr();
  p.skip();
  if (p.i != text.size())
    throw std::invalid_argument("parse_poly: trailing input");
  return r;
}

}  // namespace affinv
