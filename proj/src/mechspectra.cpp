#include "optokerr/mechspectra.hpp"

#include <cmath>
#include <limits>

#include "optokerr/constants.hpp"
#include "optokerr/error.hpp"

namespace optokerr {

namespace {

void require_stable(const DriftMatrix& m) {
  const StabilityReport r = stability(m);
  if (!r.stable)
    throw Error(ErrorKind::UnstableSystem, "steady state is linearly unstable (max Re lambda = " +
                                               std::to_string(r.max_real) + " rad/s)");
}

}  // namespace

Complex SusceptibilityParams::optical_factor(double omega) const noexcept {
  const Complex z(kappa, omega);
  return beta2 + z * z;
}

Complex SusceptibilityParams::denominator(double omega) const noexcept {
  return Complex(omega_m * omega_m - omega * omega, omega * gamma_m) * optical_factor(omega) - beta1;
}

Complex SusceptibilityParams::susceptibility(double omega) const noexcept {
  return optical_factor(omega) / (mass * denominator(omega));
}

double SusceptibilityParams::delta2_sq(double omega) const noexcept {
  return kappa * kappa + omega * omega + 4.0 * gain * gain + detuning_eff * detuning_eff;
}

SusceptibilityParams coupling_params(const DerivedParams& d, const SteadyState& ss) {
  const SystemParams& p = d.input;
  const LinearCoefficients c = linear_coefficients(d, ss);
  const double k = 2.0 * constants::hbar * d.g_m * d.g_m / p.mass;
  const Complex z = ss.amplitude * ss.amplitude * std::polar(1.0, -p.theta);

  SusceptibilityParams sp;
  sp.parametric = Complex(c.gamma1, c.delta1);
  sp.beta0 = k * ss.detuning_rp * ss.intensity;
  sp.beta1 = k * (ss.detuning_eff * ss.intensity - 2.0 * p.gain * z.imag());
  sp.beta2 = c.detuning_kerr * c.detuning_kerr - std::norm(sp.parametric);
  sp.amplitude = ss.amplitude;
  sp.intensity = ss.intensity;
  sp.detuning_eff = ss.detuning_eff;
  sp.detuning_kerr = ss.detuning_kerr;
  sp.gain = p.gain;
  sp.kappa = p.kappa;
  sp.gamma_m = d.gamma_m;
  sp.omega_m = p.omega_m;
  sp.mass = p.mass;
  sp.g_m = d.g_m;
  return sp;
}

VectorX linear_grid(double lo, double hi, std::size_t n) {
  if (n < 2) throw Error(ErrorKind::InvalidParameter, "grid needs at least two points");
  return VectorX::LinSpaced(static_cast<Eigen::Index>(n), lo, hi);
}

SpectrumGrid displacement_spectrum(const VectorX& omega, const DerivedParams& d, const SteadyState& ss,
                                   SpectrumForm form) {
  require_stable(drift_matrix(d, ss));
  const SusceptibilityParams sp = coupling_params(d, ss);
  const NoiseModel noise = NoiseModel::from(d);
  const double hb = constants::hbar;
  const double rp = 2.0 * sp.kappa * hb * hb * sp.g_m * sp.g_m / (sp.mass * sp.mass);
  const Complex a2 = sp.amplitude * sp.amplitude;
  const Complex theta_phase = std::polar(1.0, -d.input.theta);

  SpectrumGrid out;
  out.omega = omega;
  out.values.resize(omega.size());
  out.quantity = "S_q";
  out.units = "m^2 s";
  out.normalization = "symmetrized";
  for (Eigen::Index i = 0; i < omega.size(); ++i) {
    const double w = omega[i];
    const Complex den = sp.denominator(w);
    const double chi2 = std::norm(sp.susceptibility(w));
    double numerator = 0.0;
    if (form == SpectrumForm::Exact) {
      const double d1 = sp.detuning_kerr;
      numerator = sp.intensity * (sp.kappa * sp.kappa + w * w + d1 * d1 + std::norm(sp.parametric)) +
                  2.0 * (a2 * std::conj(sp.parametric) * Complex(sp.kappa, d1)).real();
    } else {
      numerator = sp.intensity * sp.delta2_sq(w) +
                  4.0 * sp.gain * (a2 * theta_phase * Complex(sp.kappa, sp.detuning_eff)).real();
    }
    out.values[i] = chi2 * noise.brownian_symmetrized(w) + rp * numerator / std::norm(den);
  }
  return out;
}

SpectrumGrid displacement_spectrum_oracle(const VectorX& omega, const DriftMatrix& m, const NoiseModel& noise) {
  require_stable(m);
  const Vector4& s = m.scaling;
  // symmetrized input densities in SI: force noise on p, vacuum on x and y
  SpectrumGrid out;
  out.omega = omega;
  out.values.resize(omega.size());
  out.quantity = "S_q";
  out.units = "m^2 s";
  out.normalization = "symmetrized";
  const Matrix4c mt = m.dimensionless.cast<Complex>();
  for (Eigen::Index i = 0; i < omega.size(); ++i) {
    const double w = omega[i];
    const Matrix4c lhs = Complex(0.0, w) * Matrix4c::Identity() - mt;
    // row 0 of the resolvent via the transposed system
    const Vector4c row = lhs.transpose().partialPivLu().solve(Vector4c::UnitX());
    const double n[4] = {0.0, noise.brownian_symmetrized(w), 2.0 * noise.kappa, 2.0 * noise.kappa};
    double acc = 0.0;
    for (int j = 1; j < 4; ++j) {
      const double h = std::abs(row[j]) * s[j] / s[0];
      acc += h * h * n[j];
    }
    out.values[i] = acc;
  }
  return out;
}

std::vector<Peak> find_peaks(const SpectrumGrid& s) {
  std::vector<Peak> out;
  const Eigen::Index n = s.values.size();
  for (Eigen::Index i = 1; i + 1 < n; ++i) {
    const double a = s.values[i - 1], b = s.values[i], c = s.values[i + 1];
    if (!(b > a && b >= c)) continue;
    Peak pk;
    pk.index = static_cast<std::size_t>(i);
    pk.omega = s.omega[i];
    pk.value = b;
    const double curv = a - 2.0 * b + c;
    if (curv < 0.0) {
      const double shift = 0.5 * (a - c) / curv;
      const double h = 0.5 * (s.omega[i + 1] - s.omega[i - 1]);
      pk.omega = s.omega[i] + shift * h;
      pk.value = b - 0.25 * (a - c) * shift;
    }
    out.push_back(pk);
  }
  return out;
}

NormalModes normal_modes(const SusceptibilityParams& sp, double omega_m) {
  const double w2 = omega_m * omega_m;
  const double diff = w2 - sp.beta2;
  const double disc = diff * diff + 4.0 * sp.beta1;
  if (disc < 0.0) throw Error(ErrorKind::ImaginaryMode, "normal-mode discriminant negative");
  const double root = std::sqrt(disc);
  const double plus = 0.5 * (w2 + sp.beta2 + root);
  const double minus = 0.5 * (w2 + sp.beta2 - root);
  if (minus < 0.0)
    throw Error(ErrorKind::ImaginaryMode, "lower normal mode has omega^2 < 0 (close to instability)");
  NormalModes nm;
  nm.omega_plus = std::sqrt(plus);
  nm.omega_minus = std::sqrt(minus);
  nm.resolved = nm.omega_plus - nm.omega_minus > sp.kappa + sp.gamma_m;
  return nm;
}

EffectiveResponse effective_response(const VectorX& omega, const SusceptibilityParams& sp) {
  EffectiveResponse r;
  const Eigen::Index n = omega.size();
  r.omega = omega;
  r.omega_eff_sq.resize(n);
  r.omega_eff.resize(n);
  r.gamma_phys.resize(n);
  r.gamma_paper.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double w = omega[i];
    const double re = sp.beta2 + sp.kappa * sp.kappa - w * w;
    const double mod2 = re * re + 4.0 * sp.kappa * sp.kappa * w * w;
    r.omega_eff_sq[i] = sp.omega_m * sp.omega_m - sp.beta1 * re / mod2;
    r.omega_eff[i] = r.omega_eff_sq[i] >= 0.0 ? std::sqrt(r.omega_eff_sq[i]) : std::numeric_limits<double>::quiet_NaN();
    r.gamma_phys[i] = sp.gamma_m + 2.0 * sp.beta1 * sp.kappa / mod2;
    r.gamma_paper[i] = sp.mass * r.gamma_phys[i];
  }
  return r;
}

CoolingResult cooling_figures(const DerivedParams& d, const SteadyState& ss) {
  require_stable(drift_matrix(d, ss));
  const SystemParams& p = d.input;
  const SusceptibilityParams sp = coupling_params(d, ss);
  VectorX w(1);
  w << p.omega_m;
  const EffectiveResponse r = effective_response(w, sp);
  if (!(r.omega_eff_sq[0] > 0.0))
    throw Error(ErrorKind::ImaginaryMode, "effective mechanical frequency is imaginary at omega_m");
  CoolingResult c;
  c.omega_eff = r.omega_eff[0];
  c.gamma_phys = r.gamma_phys[0];
  const double ratio = p.omega_m / c.omega_eff;
  c.n_m = constants::boltzmann * p.temperature / (constants::hbar * p.omega_m) * (d.gamma_m / c.gamma_phys) * ratio *
          ratio * ratio;
  c.t_eff = c.n_m * constants::hbar * c.omega_eff / constants::boltzmann;
  return c;
}

}  // namespace optokerr
