#pragma once

#include <vector>

#include <Eigen/Dense>

namespace optokerr::linalg {

template <typename Scalar>
struct RouthResult {
  bool stable = false;       // all roots strictly in the open left half-plane
  bool degenerate = false;   // a zero appeared in the first column
  int sign_changes = 0;      // number of right-half-plane roots when !degenerate
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> first_column;
};

/// Routh array test for a real polynomial of any degree, coefficients in
/// ascending order. The leading coefficient must be nonzero.
template <typename Scalar>
RouthResult<Scalar> routh_hurwitz(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& ascending) {
  RouthResult<Scalar> out;
  const Eigen::Index n = ascending.size() - 1;
  out.first_column.resize(n + 1);
  if (n < 1) {
    out.first_column[0] = ascending[0];
    out.stable = true;
    return out;
  }

  const Eigen::Index width = n / 2 + 1;
  std::vector<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>> rows(n + 1,
      Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(width + 1));
  // descending coefficient a_k multiplies s^(n-k)
  auto a = [&](Eigen::Index k) { return ascending[n - k]; };
  for (Eigen::Index j = 0; j < width; ++j) {
    if (2 * j <= n) rows[0][j] = a(2 * j);
    if (2 * j + 1 <= n) rows[1][j] = a(2 * j + 1);
  }
  for (Eigen::Index k = 2; k <= n; ++k) {
    const Scalar pivot = rows[k - 1][0];
    if (pivot == Scalar(0)) {
      out.degenerate = true;
      break;
    }
    for (Eigen::Index j = 0; j < width; ++j)
      rows[k][j] = (pivot * rows[k - 2][j + 1] - rows[k - 2][0] * rows[k - 1][j + 1]) / pivot;
  }

  for (Eigen::Index k = 0; k <= n; ++k) out.first_column[k] = rows[k][0];
  if (out.first_column[n] == Scalar(0)) out.degenerate = true;
  if (out.degenerate) return out;

  for (Eigen::Index k = 1; k <= n; ++k)
    if ((out.first_column[k] > 0) != (out.first_column[k - 1] > 0)) ++out.sign_changes;
  out.stable = out.sign_changes == 0;
  return out;
}

/// det(x I - A) in ascending order via Faddeev-LeVerrier.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> characteristic_polynomial(
    const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  using Plain = typename Derived::PlainObject;
  const Eigen::Index n = a.rows();
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> c(n + 1);
  c[n] = Scalar(1);
  Plain m = Plain::Zero(n, n);
  const Plain id = Plain::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    m = (a * m + c[n - k + 1] * id).eval();
    c[n - k] = -(a * m).trace() / Scalar(k);
  }
  return c;
}

}  // namespace optokerr::linalg
