#include "optokerr/entangle.hpp"

#include <cmath>

#include "optokerr/error.hpp"
#include "optokerr/linalg/gaussian.hpp"
#include "optokerr/linalg/lyapunov.hpp"

namespace optokerr {

DimensionlessSystem nondimensionalize(const DriftMatrix& m, const DerivedParams& d) {
  DimensionlessSystem s;
  s.drift = m.dimensionless;
  s.diffusion = NoiseModel::from(d).diffusion();
  s.time_scale = m.time_scale;
  return s;
}

CovarianceMatrix solve_lyapunov(const DimensionlessSystem& sys) {
  const Eigen::EigenSolver<Matrix4> es(sys.drift / sys.time_scale, false);
  if (es.eigenvalues().real().maxCoeff() >= 0.0)
    throw Error(ErrorKind::UnstableSystem, "drift matrix has an eigenvalue with Re >= 0");

  CovarianceMatrix cm;
  const Matrix4 a = sys.drift / sys.time_scale;
  const Matrix4 q = sys.diffusion / sys.time_scale;
  Matrix4 v = linalg::solve_lyapunov_kronecker(a, q);
  cm.v = 0.5 * (v + v.transpose());
  cm.residual = linalg::lyapunov_residual(sys.drift, cm.v, sys.diffusion);
  cm.diffusion_norm = sys.diffusion.cwiseAbs().maxCoeff();
  return cm;
}

bool is_physical(const Matrix4& v, double tol) { return linalg::uncertainty_margin(v) >= -tol; }

EntanglementResult log_negativity(const Matrix4& v) {
  if (!v.allFinite()) throw Error(ErrorKind::UnphysicalCM, "covariance matrix not finite");
  if (!is_physical(v)) throw Error(ErrorKind::UnphysicalCM, "covariance matrix violates the uncertainty relation");
  EntanglementResult r;
  r.seralian = linalg::seralian(v);
  const double det = v.determinant();
  double disc = r.seralian * r.seralian - 4.0 * det;
  if (disc < 0.0) {
    if (disc < -1e-10 * r.seralian * r.seralian)
      throw Error(ErrorKind::UnphysicalCM, "Sigma^2 < 4 det V");
    disc = 0.0;
  }
  const double inner = 0.5 * (r.seralian - std::sqrt(disc));
  if (!(inner > 0.0)) throw Error(ErrorKind::UnphysicalCM, "partial-transpose symplectic eigenvalue not positive");
  r.eta_minus = std::sqrt(inner);
  r.log_negativity = std::max(0.0, -std::log(2.0 * r.eta_minus));
  return r;
}

}  // namespace optokerr
