#pragma once

// Dense real polynomials stored as Eigen column vectors of coefficients in
// ascending order: p(x) = c[0] + c[1] x + ... + c[n] x^n.

#include <algorithm>
#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "optokerr/linalg/balance.hpp"

namespace optokerr::linalg {

template <typename Scalar>
using Polynomial = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
Polynomial<Scalar> poly_multiply(const Polynomial<Scalar>& a, const Polynomial<Scalar>& b) {
  if (a.size() == 0 || b.size() == 0) return Polynomial<Scalar>();
  Polynomial<Scalar> out = Polynomial<Scalar>::Zero(a.size() + b.size() - 1);
  for (Eigen::Index i = 0; i < a.size(); ++i)
    for (Eigen::Index j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

template <typename Scalar>
Polynomial<Scalar> poly_add(const Polynomial<Scalar>& a, const Polynomial<Scalar>& b) {
  Polynomial<Scalar> out = Polynomial<Scalar>::Zero(std::max(a.size(), b.size()));
  out.head(a.size()) += a;
  out.head(b.size()) += b;
  return out;
}

/// Horner evaluation; `x` may be complex for a real polynomial.
template <typename Scalar, typename Arg>
auto poly_evaluate(const Polynomial<Scalar>& p, const Arg& x) {
  using Result = decltype(Scalar{} * x);
  Result acc{0};
  for (Eigen::Index k = p.size() - 1; k >= 0; --k) acc = acc * x + p[k];
  return acc;
}

template <typename Scalar>
Polynomial<Scalar> poly_derivative(const Polynomial<Scalar>& p) {
  if (p.size() <= 1) return Polynomial<Scalar>::Zero(1);
  Polynomial<Scalar> out(p.size() - 1);
  for (Eigen::Index k = 1; k < p.size(); ++k) out[k - 1] = Scalar(k) * p[k];
  return out;
}

/// Drops high-order coefficients that are exactly zero.
template <typename Scalar>
Polynomial<Scalar> trim_zeros(const Polynomial<Scalar>& p) {
  Eigen::Index n = p.size();
  while (n > 1 && p[n - 1] == Scalar(0)) --n;
  return p.head(n);
}

/// Drops high-order coefficients whose magnitude is below `rel_tol` times the
/// largest coefficient.
template <typename Scalar>
Polynomial<Scalar> trim_relative(const Polynomial<Scalar>& p, Scalar rel_tol) {
  if (p.size() == 0) return p;
  const Scalar scale = p.cwiseAbs().maxCoeff();
  Eigen::Index n = p.size();
  while (n > 1 && std::abs(p[n - 1]) <= rel_tol * scale) --n;
  return p.head(n);
}

/// p(s x) for a positive scale s, i.e. c[k] -> c[k] s^k.
template <typename Scalar>
Polynomial<Scalar> poly_rescale_argument(const Polynomial<Scalar>& p, Scalar s) {
  Polynomial<Scalar> out(p.size());
  Scalar f(1);
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    out[k] = p[k] * f;
    f *= s;
  }
  return out;
}

/// Fujiwara's bound: every root satisfies
/// |x| <= 2 max(|c[n-1]/c[n]|, |c[n-2]/c[n]|^(1/2), ..., |c[0]/2c[n]|^(1/n)).
template <typename Scalar>
Scalar fujiwara_root_bound(const Polynomial<Scalar>& p) {
  using std::abs;
  using std::pow;
  const Eigen::Index n = p.size() - 1;
  Scalar m(0);
  for (Eigen::Index k = 1; k <= n; ++k) {
    Scalar r = abs(p[n - k] / p[n]);
    if (k == n) r /= Scalar(2);
    m = std::max(m, pow(r, Scalar(1) / Scalar(k)));
  }
  return Scalar(2) * m;
}

/// Frobenius companion matrix of the monic normalisation of `p`
/// (degree >= 1, leading coefficient nonzero).
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> companion_matrix(const Polynomial<Scalar>& p) {
  const Eigen::Index n = p.size() - 1;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> c =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) c(0, k) = -p[n - 1 - k] / p[n];
  for (Eigen::Index k = 1; k < n; ++k) c(k, k - 1) = Scalar(1);
  return c;
}

/// All complex roots via balanced companion-matrix eigenvalues.
template <typename Scalar>
Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1> companion_roots(const Polynomial<Scalar>& p) {
  using Roots = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;
  const Polynomial<Scalar> q = trim_zeros(p);
  if (q.size() <= 1) return Roots();
  if (q.size() == 2) {
    Roots r(1);
    r[0] = std::complex<Scalar>(-q[0] / q[1], Scalar(0));
    return r;
  }
  const auto balanced = balance(companion_matrix(q));
  Eigen::EigenSolver<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> solver(balanced.matrix, false);
  return solver.eigenvalues();
}

}  // namespace optokerr::linalg
