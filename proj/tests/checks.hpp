#pragma once

#include <algorithm>
#include <cmath>

#include "optokerr/linearized.hpp"
#include "oracles.hpp"

namespace checks {

/// State vector (q, p, x, y) of a steady state in SI quadratures.
inline Eigen::Vector4d state_vector(const optokerr::SteadyState& ss) {
  return {ss.position, ss.momentum, 2.0 * ss.amplitude.real(), 2.0 * ss.amplitude.imag()};
}

/// max_ij |J_fd - M|_ij / (|M_ij| + 1e-6 max|M|) in the scaled quadratures,
/// with central-difference steps of 1e-5 times max(|u_k|, zero-point scale);
/// both field quadratures step with the field modulus |x + iy|.
/// The 1e-6 max|M| floor only matters for entries that vanish identically.
inline double jacobian_deviation(const optokerr::DerivedParams& d, const optokerr::SteadyState& ss) {
  const optokerr::DriftMatrix m = optokerr::drift_matrix(d, ss);
  const Eigen::Vector4d u0 = state_vector(ss);
  Eigen::Vector4d scale;
  const double field = std::hypot(u0[2], u0[3]);
  for (int k = 0; k < 4; ++k) scale[k] = std::max(k < 2 ? std::abs(u0[k]) : field, 1.0 / m.scaling[k]);
  const Eigen::Matrix4d fd = oracle::finite_difference_jacobian(d, u0, scale);
  const Eigen::Matrix4d fdt = m.scaling.asDiagonal() * fd * m.scaling.cwiseInverse().asDiagonal();
  const double big = m.dimensionless.cwiseAbs().maxCoeff();
  double worst = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      worst = std::max(worst, std::abs(fdt(i, j) - m.dimensionless(i, j)) /
                                  (std::abs(m.dimensionless(i, j)) + 1e-6 * big));
  return worst;
}

}  // namespace checks
