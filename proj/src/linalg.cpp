#include "affinv/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace affinv {

namespace {

bool negligible(const Scalar& v, double tol) {
  return v.exact() ? v.is_zero() : std::abs(v.value()) <= tol;
}

// Reduce m in place; returns pivot columns. Optional rhs is carried along.
std::vector<int> echelon(Matrix& m, std::vector<Scalar>* rhs, double tol) {
  std::vector<int> pivots;
  size_t rows = m.size();
  if (rows == 0) return pivots;
  size_t cols = m[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t best = r;
    double mag = -1;
    for (size_t i = r; i < rows; ++i) {
      double v = std::abs(m[i][c].value());
      if (v > mag) {
        mag = v;
        best = i;
      }
    }
    if (negligible(m[best][c], tol)) continue;
    std::swap(m[r], m[best]);
    if (rhs) std::swap((*rhs)[r], (*rhs)[best]);
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || negligible(m[i][c], tol)) continue;
      Scalar f = m[i][c] / m[r][c];
      for (size_t jc = c; jc < cols; ++jc) m[i][jc] -= f * m[r][jc];
      m[i][c] = Scalar(0);
      if (rhs) (*rhs)[i] -= f * (*rhs)[r];
    }
    pivots.push_back(int(c));
    ++r;
  }
  return pivots;
}

}  // namespace

int matrix_rank(Matrix m, double tol) {
  return int(echelon(m, nullptr, tol).size());
}

std::vector<Scalar> least_squares(const Matrix& a, const std::vector<Scalar>& b) {
  size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  Matrix ata(cols, std::vector<Scalar>(cols, Scalar(0)));
  std::vector<Scalar> atb(cols, Scalar(0));
  for (size_t i = 0; i < cols; ++i) {
    for (size_t j = 0; j < cols; ++j)
      for (size_t k = 0; k < rows; ++k) ata[i][j] += a[k][i] * a[k][j];
    for (size_t k = 0; k < rows; ++k) atb[i] += a[k][i] * b[k];
  }
  return particular_solution(ata, atb);
}

std::vector<std::vector<Scalar>> left_null_space(const Matrix& a, double tol) {
  size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  Matrix at(cols, std::vector<Scalar>(rows));
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j) at[j][i] = a[i][j];
  std::vector<int> pivots = echelon(at, nullptr, tol);
  // null space of a^t: variables are the original row indices
  std::vector<bool> is_pivot(rows, false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Scalar>> basis;
  for (size_t free = 0; free < rows; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> w(rows, Scalar(0));
    w[free] = Scalar(1);
    for (size_t pr = 0; pr < pivots.size(); ++pr) {
      int pc = pivots[pr];
      w[pc] = -at[pr][free] / at[pr][pc];
    }
    basis.push_back(std::move(w));
  }
  return basis;
}

std::vector<Scalar> particular_solution(Matrix a, std::vector<Scalar> b,
                                        double tol) {
  size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::vector<int> pivots = echelon(a, &b, tol);
  for (size_t i = 0; i < rows; ++i) {
    bool zero_row = true;
    for (size_t j = 0; j < cols; ++j)
      if (!negligible(a[i][j], tol)) zero_row = false;
    if (zero_row && !negligible(b[i], tol))
      throw std::runtime_error("inconsistent linear system");
  }
  std::vector<Scalar> x(cols, Scalar(0));
  for (size_t pr = 0; pr < pivots.size(); ++pr)
    x[pivots[pr]] = b[pr] / a[pr][pivots[pr]];
  return x;
}

}  // namespace affinv
