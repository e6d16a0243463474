#ifndef AFFINV_JETSPACE_HPP
#define AFFINV_JETSPACE_HPP

#include <map>
#include <string>
#include <vector>

#include "affinv/poly.hpp"
#include "affinv/taylor.hpp"

namespace affinv {

struct OrderTooLow : std::runtime_error {
  OrderTooLow() : std::runtime_error("jet order too low") {}
};
struct OrderTooHigh : std::runtime_error {
  OrderTooHigh() : std::runtime_error("jet order too high") {}
};
struct OrderOverflow : std::runtime_error {
  OrderOverflow() : std::runtime_error("total derivative order overflow") {}
};
struct NotSameFiber : std::runtime_error {
  NotSameFiber() : std::runtime_error("jets do not share a fiber") {}
};

enum class Region { plus, minus, degenerate };
std::string region_name(Region r);

/// Sorted multi-index word ("xxy") for the derivative with the given number
/// of x's and y's.
std::string jet_word(int xcount, int ycount);

/// Point of J^k over two independent variables, k <= 5. Derivative entries
/// are keyed by sorted words; raw jet coordinates carry no binomial weights.
class JetPoint {
 public:
  JetPoint() : order_(0), x_(0), y_(0), u_(0) {}
  JetPoint(int order, Scalar x, Scalar y, Scalar u);

  int order() const { return order_; }
  const Scalar& x() const { return x_; }
  const Scalar& y() const { return y_; }
  const Scalar& u() const { return u_; }
  const std::map<std::string, Scalar>& derivs() const { return derivs_; }

  const Scalar& d(const std::string& word) const;
  Scalar d_or_zero(int order, int ycount) const;
  void set(const std::string& word, const Scalar& v);
  void set(int order, int ycount, const Scalar& v) {
    set(jet_word(order - ycount, ycount), v);
  }

  /// All 28-variable assignment slots: jet entries filled, eta/a slots zero.
  std::vector<Scalar> assignment() const;

  bool operator==(const JetPoint& o) const;

 private:
  int order_;
  Scalar x_, y_, u_;
  std::map<std::string, Scalar> derivs_;
};

/// Symmetric covariant k-tensor sum C(k,i) c_i dx^(k-i) dy^i (x) du.
struct SymTensorK {
  int k = 2;
  std::vector<Scalar> c;  // size k + 1, raw coefficients c_0..c_k

  SymTensorK() : c(3, Scalar(0)) {}
  explicit SymTensorK(int kk) : k(kk), c(kk + 1, Scalar(0)) {}
  bool is_zero() const;
};

JetPoint jet_of_surface(const TaylorMap& f, int k);

/// D^(k) along x or y applied to a polynomial in jet variables of order
/// <= k - 1; throws OrderOverflow otherwise.
Poly total_derivative(const Poly& p, char direction, int k);

JetPoint project(const JetPoint& j, int m);

SymTensorK vertical_difference(const JetPoint& j1, const JetPoint& j2,
                               double tol = 1e-12);

Region classify_fiber(const JetPoint& j);

/// det Hess at the jet.
Scalar hessian_det(const JetPoint& j);

}  // namespace affinv

#endif
