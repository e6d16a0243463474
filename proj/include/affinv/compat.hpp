#ifndef AFFINV_COMPAT_HPP
#define AFFINV_COMPAT_HPP

#include <array>
#include <map>
#include <utility>
#include <vector>

#include "affinv/jetspace.hpp"

namespace affinv {

struct IdentityFailed : std::runtime_error {
  IdentityFailed() : std::runtime_error("compatibility factorization failed") {}
};
struct NoRealBranch : std::runtime_error {
  NoRealBranch() : std::runtime_error("conic has no real branch at the sample") {}
};
struct DegenerateSample : std::runtime_error {
  DegenerateSample() : std::runtime_error("degenerate conic sample") {}
};
struct PoleAtSample : std::runtime_error {
  PoleAtSample() : std::runtime_error("family denominator vanishes at the sample") {}
};
struct NotOnProlongedManifold : std::runtime_error {
  NotOnProlongedManifold()
      : std::runtime_error("jet does not satisfy the prolonged system") {}
};

/// Rational function num / u_yy^k with a polynomial numerator.
struct RatFuncY {
  Poly num;
  int k = 0;

  RatFuncY() = default;
  RatFuncY(Poly n, int kk) : num(std::move(n)), k(kk) { reduce(); }

  /// Strip common u_yy factors between numerator and denominator.
  void reduce();
  Scalar eval(const std::vector<Scalar>& values) const;
  bool operator==(const RatFuncY& o) const;
};

/// The plus-region system solved for the x-heavy derivatives, with
/// denominators that are powers of u_yy only.
struct ProlongedSystem {
  // keyed by jet variable index (VUXXX ... VUYYYYY)
  std::map<int, RatFuncY> solved;
};

ProlongedSystem build_prolonged_system();

/// Cross-differentiation residuals before imposing the compatibility
/// conditions; both are verified against their exact factorizations.
std::pair<RatFuncY, RatFuncY> cross_residuals(const ProlongedSystem& sys);

/// The fourth and fifth order conditions and their x <-> y mirrors.
struct CompatValues {
  Scalar c4, c5, c4x, c5x;
};
CompatValues compat_conditions(const JetPoint& j);

struct ConicCoeffs {
  Scalar a;
  std::array<Scalar, 4> h;  // h0 + h1 x + h2 y + h3 x y
  std::array<Scalar, 9> k;  // k0, k1 x, k2 y, k3 x^2, k4 xy, k5 y^2,
                            // k6 x^2 y, k7 x y^2, k8 x^2 y^2
};

struct SampleResult {
  Scalar x, y;
  Scalar res1, res2;
  int det_sign = 0;
};

struct CompatReport {
  Scalar max_residual;
  std::vector<SampleResult> samples;
};

/// Solve the conic for u at each sample (branch +1 or -1) and evaluate the
/// residuals of the solved system.
CompatReport conic_check(const ConicCoeffs& c, int branch,
                         const std::vector<std::pair<Scalar, Scalar>>& samples);

/// Order-5 jet of the chosen conic branch at one point.
JetPoint conic_branch_jet(const ConicCoeffs& c, int branch, const Scalar& x,
                          const Scalar& y, int order = 5);

struct FamilyCoeffs {
  std::array<Scalar, 6> a;  // a0 + a1 x + a2 y + a3 xy + a4 y^2 + a5 x y^2
  std::array<Scalar, 2> b;  // b0 + b1 y
};

/// Residuals of the original plus-region system on the rational family.
CompatReport family_check(const FamilyCoeffs& f,
                          const std::vector<std::pair<Scalar, Scalar>>& samples);

/// Order-5 jet of the family surface at one point.
JetPoint family_jet(const FamilyCoeffs& f, const Scalar& x, const Scalar& y,
                    int order = 5);

struct HigherProportionality {
  Scalar res3, res4, res5;
};

/// Rank-deficiency residuals of the order-3/4/5 symmetric forms against the
/// hessian form, for a jet on the prolonged manifold.
HigherProportionality higher_proportionality(const JetPoint& j,
                                             double tol = 1e-8);

}  // namespace affinv

#endif
