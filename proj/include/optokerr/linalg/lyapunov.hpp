#pragma once

#include <Eigen/Dense>

namespace optokerr::linalg {

/// Solves A X + X A^T + Q = 0 by vectorisation,
/// (I (x) A + A (x) I) vec(X) = -vec(Q), followed by one step of iterative
/// refinement. Intended for small n (the Kronecker system is n^2 x n^2).
template <typename DerivedA, typename DerivedQ>
typename DerivedA::PlainObject solve_lyapunov_kronecker(const Eigen::MatrixBase<DerivedA>& a,
                                                        const Eigen::MatrixBase<DerivedQ>& q) {
  using Scalar = typename DerivedA::Scalar;
  using Plain = typename DerivedA::PlainObject;
  using Big = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using BigVec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  const Eigen::Index n = a.rows();
  Big k = Big::Zero(n * n, n * n);
  // vec is column-major: vec(X)[i + n j] = X(i, j)
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index l = 0; l < n; ++l) {
        k(i + n * j, l + n * j) += a(i, l);  // (A X)(i,j) = sum_l A(i,l) X(l,j)
        k(i + n * j, i + n * l) += a(j, l);  // (X A^T)(i,j) = sum_l X(i,l) A(j,l)
      }

  BigVec rhs(n * n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) rhs[i + n * j] = -q(i, j);

  const Eigen::FullPivLU<Big> lu(k);
  BigVec x = lu.solve(rhs);
  x += lu.solve(rhs - k * x);

  Plain out(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) out(i, j) = x[i + n * j];
  return out;
}

/// max-norm of A X + X A^T + Q
template <typename DA, typename DX, typename DQ>
typename DA::Scalar lyapunov_residual(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DX>& x,
                                      const Eigen::MatrixBase<DQ>& q) {
  return (a * x + x * a.transpose() + q).cwiseAbs().maxCoeff();
}

}  // namespace optokerr::linalg
