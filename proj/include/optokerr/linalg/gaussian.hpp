#pragma once

#include <cmath>
#include <complex>

#include <Eigen/Dense>

namespace optokerr::linalg {

/// Two-mode symplectic form Omega = diag(J, J), J = [[0, 1], [-1, 0]].
template <typename Scalar>
Eigen::Matrix<Scalar, 4, 4> symplectic_form() {
  Eigen::Matrix<Scalar, 4, 4> w = Eigen::Matrix<Scalar, 4, 4>::Zero();
  w(0, 1) = w(2, 3) = Scalar(1);
  w(1, 0) = w(3, 2) = Scalar(-1);
  return w;
}

/// Smallest eigenvalue of the Hermitian matrix V + (i/2) Omega; nonnegative
/// for a physical two-mode covariance matrix (vacuum variance 1/2).
template <typename Derived>
typename Derived::Scalar uncertainty_margin(const Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  using C = std::complex<Scalar>;
  Eigen::Matrix<C, 4, 4> h = v.template cast<C>();
  h += C(0, 0.5) * symplectic_form<Scalar>().template cast<C>();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<C, 4, 4>> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

/// Seralian invariant Sigma = det A + det B - 2 det C of the block form
/// [[A, C], [C^T, B]].
template <typename Derived>
typename Derived::Scalar seralian(const Eigen::MatrixBase<Derived>& v) {
  return v.template topLeftCorner<2, 2>().determinant() + v.template bottomRightCorner<2, 2>().determinant() -
         typename Derived::Scalar(2) * v.template topRightCorner<2, 2>().determinant();
}

}  // namespace optokerr::linalg
