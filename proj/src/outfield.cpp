#include "optokerr/outfield.hpp"

#include <cmath>
#include <limits>

#include "optokerr/constants.hpp"
#include "optokerr/error.hpp"

namespace optokerr {

namespace {

struct Correlators {
  Complex aa;
  double aad;
  double ada;
};

Correlators correlators(const OutputTransfer& pos, const OutputTransfer& neg, const NoiseModel& noise) {
  const double k = noise.brownian_kernel(pos.omega);
  Correlators c;
  c.aa = k * pos.v1 * neg.v1 + pos.v2 * neg.v3;
  c.aad = k * std::norm(pos.v1) + std::norm(pos.v2);
  c.ada = k * std::norm(neg.v1) + std::norm(neg.v3);
  return c;
}

QuadratureSpectrum fill_correlators(const TransferTable& t, const NoiseModel& noise) {
  QuadratureSpectrum q;
  const Eigen::Index n = t.omega.size();
  q.omega = t.omega;
  q.c_aa.resize(n);
  q.c_aad.resize(n);
  q.c_ada.resize(n);
  q.s_phi.resize(n);
  q.phi_opt = VectorX::Constant(n, std::numeric_limits<double>::quiet_NaN());
  for (Eigen::Index i = 0; i < n; ++i) {
    const Correlators c = correlators(t.positive[i], t.negative[i], noise);
    q.c_aa[i] = c.aa;
    q.c_aad[i] = c.aad;
    q.c_ada[i] = c.ada;
  }
  return q;
}

}  // namespace

OutputTransfer output_transfer(double omega, const DriftMatrix& m, const DerivedParams& d) {
  const double kappa = d.input.kappa;
  const Matrix4c lhs = Complex(0.0, omega) * Matrix4c::Identity() - m.dimensionless.cast<Complex>();
  const Matrix4c h = lhs.partialPivLu().inverse();
  const Complex i(0.0, 1.0);
  // state order (Q, P, X, Y), X = x / sqrt2, Y = y / sqrt2
  const Complex hx = h(2, 2) + i * h(3, 2);
  const Complex hy = h(2, 3) + i * h(3, 3);

  OutputTransfer t;
  t.omega = omega;
  t.v1 = std::sqrt(kappa) * (h(2, 1) + i * h(3, 1)) /
         std::sqrt(constants::hbar * d.input.mass * d.input.omega_m);
  t.v2 = kappa * (hx - i * hy) - 1.0;
  t.v3 = kappa * (hx + i * hy);
  t.residual = (lhs * h - Matrix4c::Identity()).cwiseAbs().maxCoeff();
  return t;
}

TransferTable transfer_table(const VectorX& omega, const DriftMatrix& m, const DerivedParams& d) {
  const StabilityReport r = stability(m);
  if (!r.stable) throw Error(ErrorKind::UnstableSystem, "steady state is linearly unstable");
  TransferTable t;
  t.omega = omega;
  t.positive.reserve(omega.size());
  t.negative.reserve(omega.size());
  for (Eigen::Index i = 0; i < omega.size(); ++i) {
    t.positive.push_back(output_transfer(omega[i], m, d));
    t.negative.push_back(output_transfer(-omega[i], m, d));
    t.max_residual = std::max({t.max_residual, t.positive.back().residual, t.negative.back().residual});
  }
  return t;
}

SpectrumGrid intensity_spectrum(const TransferTable& t, const NoiseModel& noise) {
  SpectrumGrid s;
  s.omega = t.omega;
  s.values.resize(t.omega.size());
  s.quantity = "S_intensity";
  s.units = "dimensionless";
  s.normalization = "vacuum input gives 0";
  for (Eigen::Index i = 0; i < t.omega.size(); ++i)
    s.values[i] = correlators(t.positive[i], t.negative[i], noise).ada;
  return s;
}

QuadratureSpectrum quadrature_spectrum(const TransferTable& t, double phi, const NoiseModel& noise) {
  QuadratureSpectrum q = fill_correlators(t, noise);
  q.phi = phi;
  const Complex rot = std::polar(1.0, -2.0 * phi);
  for (Eigen::Index i = 0; i < q.omega.size(); ++i)
    q.s_phi[i] = 2.0 * (rot * q.c_aa[i]).real() + q.c_aad[i] + q.c_ada[i];
  return q;
}

QuadratureSpectrum optimal_squeezing(const TransferTable& t, const NoiseModel& noise) {
  QuadratureSpectrum q = fill_correlators(t, noise);
  q.phi = std::numeric_limits<double>::quiet_NaN();
  for (Eigen::Index i = 0; i < q.omega.size(); ++i) {
    const double mag = std::abs(q.c_aa[i]);
    const double diag = q.c_aad[i] + q.c_ada[i];
    q.s_phi[i] = -2.0 * mag + diag;
    if (mag >= 1e-14 * diag && mag > 0.0) {
      double phi = 0.5 * std::arg(-q.c_aa[i]);
      if (phi < 0.0) phi += constants::pi;
      if (phi >= constants::pi) phi -= constants::pi;
      q.phi_opt[i] = phi;
    }
  }
  return q;
}

}  // namespace optokerr
