#include "optokerr/sysparams.hpp"

#include <cmath>
#include <string>

#include "optokerr/constants.hpp"
#include "optokerr/error.hpp"

namespace optokerr {

namespace {

void require_positive(ValidationReport& r, const char* field, double v) {
  if (!std::isfinite(v))
    r.violations.push_back({field, "must be finite"});
  else if (!(v > 0.0))
    r.violations.push_back({field, "must be > 0"});
}

void require_nonnegative(ValidationReport& r, const char* field, double v) {
  if (!std::isfinite(v))
    r.violations.push_back({field, "must be finite"});
  else if (v < 0.0)
    r.violations.push_back({field, "must be >= 0"});
}

}  // namespace

ValidationReport validate(const SystemParams& p) {
  ValidationReport r;
  require_positive(r, "omega_m", p.omega_m);
  require_positive(r, "mass", p.mass);
  require_positive(r, "q_factor", p.q_factor);
  require_positive(r, "length", p.length);
  require_positive(r, "wavelength", p.wavelength);
  require_positive(r, "kappa", p.kappa);
  require_nonnegative(r, "power", p.power);
  require_nonnegative(r, "gain", p.gain);
  require_nonnegative(r, "eta", p.eta);
  require_nonnegative(r, "temperature", p.temperature);
  if (!std::isfinite(p.detuning)) r.violations.push_back({"detuning", "must be finite"});
  if (!std::isfinite(p.theta) || p.theta < 0.0 || p.theta >= constants::two_pi)
    r.violations.push_back({"theta", "must lie in [0, 2 pi)"});

  if (std::isfinite(p.omega_m) && std::isfinite(p.length) && p.length > 0.0) {
    const double fsr = constants::pi * constants::speed_of_light / p.length;
    // "much smaller than" taken as two decades
    if (p.omega_m > 1e-2 * fsr)
      r.warnings.push_back({"omega_m", "adiabatic limit omega_m << pi c / L not satisfied"});
  }
  if (std::isfinite(p.kappa) && std::isfinite(p.omega_m) && p.kappa >= p.omega_m)
    r.warnings.push_back({"kappa", "not sideband resolved (kappa >= omega_m)"});
  return r;
}

double thermal_occupancy(double omega, double temperature) noexcept {
  if (temperature <= 0.0) return 0.0;
  return 1.0 / std::expm1(constants::hbar * omega / (constants::boltzmann * temperature));
}

DerivedParams derive_params(const SystemParams& p) {
  const ValidationReport report = validate(p);
  if (!report.ok()) {
    const auto& v = report.violations.front();
    throw Error(ErrorKind::InvalidParameter, v.field + ": " + v.message);
  }

  DerivedParams d;
  d.input = p;
  d.gamma_m = p.omega_m / p.q_factor;
  d.omega_cav = constants::two_pi * constants::speed_of_light / p.wavelength;
  d.g_m = d.omega_cav / p.length;
  d.g0 = std::sqrt(constants::hbar / (2.0 * p.mass * p.omega_m)) * d.g_m;
  d.drive = std::sqrt(2.0 * p.kappa * p.power / (constants::hbar * d.omega_cav));
  d.nbar = thermal_occupancy(p.omega_m, p.temperature);
  return d;
}

DerivedParams DerivedParams::with_coupling(double g_m_new) const {
  DerivedParams d = *this;
  d.g_m = g_m_new;
  d.g0 = std::sqrt(constants::hbar / (2.0 * input.mass * input.omega_m)) * g_m_new;
  return d;
}

DerivedParams DerivedParams::with_drive(double drive_new) const {
  DerivedParams d = *this;
  d.drive = drive_new;
  return d;
}

double DerivedParams::radiation_pressure_shift() const noexcept {
  return constants::hbar * g_m * g_m / (input.mass * input.omega_m * input.omega_m);
}

double DerivedParams::detuning_slope() const noexcept {
  return 2.0 * input.eta - radiation_pressure_shift();
}

}  // namespace optokerr
