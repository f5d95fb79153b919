#pragma once

#include <cmath>

#include <Eigen/Dense>

namespace optokerr::linalg {

template <typename MatrixType>
struct Balanced {
  MatrixType matrix;                                          // D^-1 A D
  Eigen::Matrix<typename MatrixType::Scalar, MatrixType::RowsAtCompileTime, 1> scaling;  // diag(D)
};

/// Parlett-Reinsch diagonal similarity balancing with radix-2 scale factors,
/// so the similarity itself introduces no rounding error.
template <typename Derived>
Balanced<typename Derived::PlainObject> balance(const Eigen::MatrixBase<Derived>& a) {
  using Plain = typename Derived::PlainObject;
  using Scalar = typename Derived::Scalar;
  using std::abs;

  Balanced<Plain> out{a.eval(), Eigen::Matrix<Scalar, Plain::RowsAtCompileTime, 1>::Ones(a.rows())};
  Plain& m = out.matrix;
  const Scalar radix(2);
  const Scalar sqrdx = radix * radix;
  const Eigen::Index n = m.rows();

  bool done = false;
  while (!done) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      Scalar r(0), c(0);
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += abs(m(j, i));
        r += abs(m(i, j));
      }
      if (c == Scalar(0) || r == Scalar(0)) continue;
      Scalar g = r / radix;
      Scalar f(1);
      const Scalar s = c + r;
      while (c < g) {
        f *= radix;
        c *= sqrdx;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= sqrdx;
      }
      if ((c + r) / f < Scalar(0.95) * s) {
        done = false;
        out.scaling[i] *= f;
        m.row(i) /= f;
        m.col(i) *= f;
      }
    }
  }
  return out;
}

}  // namespace optokerr::linalg
