#include "optokerr/linearized.hpp"

#include <algorithm>
#include <cmath>

#include "optokerr/constants.hpp"
#include "optokerr/error.hpp"

namespace optokerr {

LinearCoefficients linear_coefficients(const DerivedParams& d, const SteadyState& ss) {
  const SystemParams& p = d.input;
  const Complex a2 = ss.amplitude * ss.amplitude;
  LinearCoefficients c;
  c.a_plus = d.g_m * ss.amplitude.real();
  c.a_minus = d.g_m * ss.amplitude.imag();
  c.gamma1 = 2.0 * p.gain * std::cos(p.theta) + 2.0 * p.eta * a2.imag();
  c.delta1 = 2.0 * p.gain * std::sin(p.theta) - 2.0 * p.eta * a2.real();
  c.detuning_kerr = ss.detuning_kerr;
  return c;
}

Vector4 quadrature_scaling(const DerivedParams& d) {
  const double m = d.input.mass, w = d.input.omega_m, hb = constants::hbar;
  const double r = 1.0 / std::sqrt(2.0);
  return Vector4(std::sqrt(m * w / hb), 1.0 / std::sqrt(hb * m * w), r, r);
}

DriftMatrix make_drift(const Matrix4& m, const DerivedParams& d) {
  DriftMatrix out;
  out.matrix = m;
  out.scaling = quadrature_scaling(d);
  out.dimensionless = out.scaling.asDiagonal() * m * out.scaling.cwiseInverse().asDiagonal();
  out.time_scale = d.input.omega_m;
  out.charpoly = linalg::characteristic_polynomial(out.dimensionless / out.time_scale);
  return out;
}

DriftMatrix drift_matrix(const DerivedParams& d, const SteadyState& ss) {
  const SystemParams& p = d.input;
  const LinearCoefficients c = linear_coefficients(d, ss);
  const double hb = constants::hbar;
  const double d1 = c.detuning_kerr;
  Matrix4 m;
  m << 0.0, 1.0 / p.mass, 0.0, 0.0,
       -p.mass * p.omega_m * p.omega_m, -d.gamma_m, hb * c.a_plus, hb * c.a_minus,
       -2.0 * c.a_minus, 0.0, -p.kappa + c.gamma1, d1 + c.delta1,
       2.0 * c.a_plus, 0.0, -d1 + c.delta1, -p.kappa - c.gamma1;
  return make_drift(m, d);
}

PrintedRouthDiagnostics printed_routh_diagnostics(const DerivedParams& d, const SteadyState& ss) {
  const SystemParams& p = d.input;
  const double h = constants::planck;
  const double I = ss.intensity;
  const double I2 = I * I;
  const double im_z = (ss.amplitude * ss.amplitude * std::polar(1.0, -p.theta)).imag();
  const double wm2 = p.omega_m * p.omega_m;
  const double k = p.kappa, g = p.gain, e = p.eta, d1 = ss.detuning_kerr;
  const double hg = h * d.g_m * d.g_m / p.mass;

  PrintedRouthDiagnostics r;
  r.r1 = d1 * d1 - 4.0 * g * g + k * k + 12.0 * e * e * I2 + 8.0 * e * d1 * I - 8.0 * g * e * im_z;
  r.r2 = 2.0 * hg * (2.0 * e * I2 - 2.0 * g * im_z);
  r.s1 = 2.0 * k * r.r1 + wm2 * (d.gamma_m + 4.0 * k * k);
  r.s2 = r.r1 * wm2 - 4.0 * hg * e * I2 - 2.0 * g * im_z;
  r.s3 = -(r.r1 * wm2 - r.r2) * wm2 * (d.gamma_m + 2.0 * k) + r.s1;
  return r;
}

StabilityReport stability(const DriftMatrix& m) {
  if (!m.dimensionless.allFinite() || !m.charpoly.allFinite())
    throw Error(ErrorKind::IllConditioned, "drift matrix or characteristic polynomial not finite");
  if (std::abs(m.charpoly[m.charpoly.size() - 1]) < std::numeric_limits<double>::min())
    throw Error(ErrorKind::IllConditioned, "characteristic polynomial leading coefficient underflows");

  StabilityReport r;
  const auto balanced = linalg::balance(Matrix4(m.dimensionless / m.time_scale));
  Eigen::EigenSolver<Matrix4> solver(balanced.matrix, false);
  Vector4c ev = solver.eigenvalues() * m.time_scale;
  std::sort(ev.data(), ev.data() + 4, [](const Complex& a, const Complex& b) {
    return a.real() != b.real() ? a.real() > b.real() : a.imag() > b.imag();
  });
  r.eigenvalues = ev;
  r.max_real = ev[0].real();
  r.stable = r.max_real < 0.0;
  r.routh = linalg::routh_hurwitz(m.charpoly);
  r.routh_stable = r.routh.stable;
  return r;
}

StabilityReport stability(const DerivedParams& d, const SteadyState& ss) {
  StabilityReport r = stability(drift_matrix(d, ss));
  r.printed = printed_routh_diagnostics(d, ss);
  return r;
}

DecoupledModes field_mode_frequencies(const DerivedParams& d, const SteadyState& ss) {
  const SystemParams& p = d.input;
  const LinearCoefficients c = linear_coefficients(d, ss);
  const double beta2 = c.detuning_kerr * c.detuning_kerr - c.gamma1 * c.gamma1 - c.delta1 * c.delta1;
  const Complex root = std::sqrt(Complex(beta2, 0.0));
  const Complex i(0.0, 1.0);
  const Complex mech = std::sqrt(Complex(p.omega_m * p.omega_m - 0.25 * d.gamma_m * d.gamma_m, 0.0));
  DecoupledModes out;
  out.field_plus = -i * p.kappa + root;
  out.field_minus = -i * p.kappa - root;
  out.mirror_plus = -i * 0.5 * d.gamma_m + mech;
  out.mirror_minus = -i * 0.5 * d.gamma_m - mech;
  return out;
}

double omega_coth(double omega, double temperature) noexcept {
  const double w = std::abs(omega);
  if (temperature <= 0.0) return w;
  const double scale = 2.0 * constants::boltzmann * temperature / constants::hbar;
  const double x = w / scale;
  if (x < 1e-4) {
    // x coth x = 1 + x^2/3 - x^4/45 + 2 x^6/945
    const double x2 = x * x;
    return scale * (1.0 + x2 / 3.0 - x2 * x2 / 45.0 + 2.0 * x2 * x2 * x2 / 945.0);
  }
  if (x > 20.0) return w;
  return scale * (x + 2.0 * x / std::expm1(2.0 * x));
}

NoiseModel NoiseModel::from(const DerivedParams& d) {
  NoiseModel n;
  n.kappa = d.input.kappa;
  n.gamma_m = d.gamma_m;
  n.mass = d.input.mass;
  n.omega_m = d.input.omega_m;
  n.temperature = d.input.temperature;
  n.nbar = d.nbar;
  return n;
}

double NoiseModel::brownian_kernel(double omega) const noexcept {
  return constants::hbar * mass * gamma_m * (omega + omega_coth(omega, temperature));
}

double NoiseModel::brownian_symmetrized(double omega) const noexcept {
  return constants::hbar * mass * gamma_m * omega_coth(omega, temperature);
}

Matrix4 NoiseModel::diffusion() const {
  return Vector4(0.0, gamma_m * (2.0 * nbar + 1.0), kappa, kappa).asDiagonal();
}

}  // namespace optokerr
