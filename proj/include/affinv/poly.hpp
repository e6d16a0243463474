#ifndef AFFINV_POLY_HPP
#define AFFINV_POLY_HPP

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "affinv/scalar.hpp"

namespace affinv {

// Canonical variable universe. Jet variables are grouped by order; the
// remaining slots serve the symbol (eta) and congruence (a_ij) computations.
enum Var : int {
  VX = 0,
  VY = 1,
  VU = 2,
  VUX = 3,
  VUY = 4,
  VUXX = 5,
  VUXY = 6,
  VUYY = 7,
  VUXXX = 8,
  VUXXY = 9,
  VUXYY = 10,
  VUYYY = 11,
  VUXXXX = 12,
  VUXXXY = 13,
  VUXXYY = 14,
  VUXYYY = 15,
  VUYYYY = 16,
  VUXXXXX = 17,
  VUXXXXY = 18,
  VUXXXYY = 19,
  VUXXYYY = 20,
  VUXYYYY = 21,
  VUYYYYY = 22,
  VETA1 = 23,
  VETA2 = 24,
  VA11 = 25,
  VA12 = 26,
  VA22 = 27,
  kNumVars = 28
};

extern const std::array<const char*, kNumVars> kVarNames;

/// Index of the jet coordinate u_{x^i y^j} with k = i + j in 0..5 (k = 0 is u).
int jet_var(int order, int ycount);
/// Jet order of a variable: 0 for u, 1 for u_x, ... ; -1 for x, y, eta, a_ij.
int var_jet_order(int var);
/// y-count of a jet variable (requires var_jet_order(var) >= 0).
int var_ycount(int var);
int var_index(std::string_view name);  // -1 if unknown

using Mono = std::array<std::uint8_t, kNumVars>;

inline int mono_degree(const Mono& m) {
  int d = 0;
  for (auto e : m) d += e;
  return d;
}

/// Graded-lexicographic order, larger-first (leading term = map begin()).
struct MonoGrlexGreater {
  bool operator()(const Mono& a, const Mono& b) const {
    int da = mono_degree(a), db = mono_degree(b);
    if (da != db) return da > db;
    return a > b;  // lexicographic on exponent arrays
  }
};

struct DivisionNotExact : std::runtime_error {
  DivisionNotExact() : std::runtime_error("polynomial division left a remainder") {}
};
struct PolyDivisionByZero : std::runtime_error {
  PolyDivisionByZero() : std::runtime_error("polynomial division by zero") {}
};

/// Exact multivariate polynomial over the rationals in the fixed variable
/// universe above. No zero coefficients are stored; term order is graded lex.
class Poly {
 public:
  using TermMap = std::map<Mono, Rational, MonoGrlexGreater>;

  Poly() = default;
  explicit Poly(const Rational& c);
  static Poly variable(int var);
  static Poly constant(long c) { return Poly(Rational(c)); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  const TermMap& terms() const { return terms_; }
  int total_degree() const;
  int degree_in(int var) const;
  bool depends_on(int var) const { return degree_in(var) > 0; }
  /// Largest jet order among the variables appearing (-1 if none).
  int max_jet_order() const;

  void add_term(const Mono& m, const Rational& c);

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly operator-() const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  bool operator==(const Poly& o) const { return terms_ == o.terms_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly scaled(const Rational& c) const;
  Poly pow(int n) const;

  /// Partial derivative with respect to one variable.
  Poly derivative(int var) const;

  /// Substitute a polynomial for a variable.
  Poly substituted(int var, const Poly& value) const;

  /// Evaluate with the given per-variable values (size kNumVars).
  Scalar eval(const std::vector<Scalar>& values) const;
  Rational eval_rational(const std::vector<Rational>& values) const;

  /// Quotient q with *this = q * divisor; throws DivisionNotExact otherwise.
  Poly exact_divide(const Poly& divisor) const;
  /// True iff divisor divides *this exactly.
  bool divisible_by(const Poly& divisor) const;

  std::string str() const;

 private:
  TermMap terms_;
};

Poly parse_poly(const std::string& text);  // small helper used by tests/CLI

}  // namespace affinv

#endif
