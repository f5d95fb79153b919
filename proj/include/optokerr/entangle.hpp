#pragma once

#include "optokerr/linearized.hpp"
#include "optokerr/types.hpp"

namespace optokerr {

/// Drift and diffusion in quadratures Q = q sqrt(m w_m / hbar),
/// P = p / sqrt(hbar m w_m), X = x / sqrt2, Y = y / sqrt2 (vacuum variance 1/2).
struct DimensionlessSystem {
  Matrix4 drift;      ///< rad/s
  Matrix4 diffusion;  ///< diag(0, gamma_m (2 nbar + 1), kappa, kappa), rad/s
  double time_scale = 1.0;
};

DimensionlessSystem nondimensionalize(const DriftMatrix& m, const DerivedParams& d);

struct CovarianceMatrix {
  Matrix4 v;
  double residual = 0.0;  ///< max |M V + V M^T + D|
  double diffusion_norm = 0.0;  ///< max |D|

  Eigen::Matrix2d mirror() const { return v.topLeftCorner<2, 2>(); }
  Eigen::Matrix2d field() const { return v.bottomRightCorner<2, 2>(); }
  Eigen::Matrix2d correlations() const { return v.topRightCorner<2, 2>(); }
  double relative_residual() const { return diffusion_norm > 0.0 ? residual / diffusion_norm : residual; }
};

/// Stationary solution of M V + V M^T + D = 0. Throws UnstableSystem.
CovarianceMatrix solve_lyapunov(const DimensionlessSystem& sys);

struct EntanglementResult {
  double eta_minus = 0.0;
  double log_negativity = 0.0;
  double seralian = 0.0;
};

/// Throws UnphysicalCM.
EntanglementResult log_negativity(const Matrix4& v);
inline EntanglementResult log_negativity(const CovarianceMatrix& cm) { return log_negativity(cm.v); }

/// V + (i/2) Omega >= -tol.
bool is_physical(const Matrix4& v, double tol = 1e-8);

}  // namespace optokerr
