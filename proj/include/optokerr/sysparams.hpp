#pragma once

#include <string>
#include <vector>

namespace optokerr {

/// Physical inputs. Every angular frequency is in rad/s; conversions from
/// ordinary frequencies or ratios happen at the config boundary.
struct SystemParams {
  double omega_m = 0.0;      ///< mechanical frequency (rad/s)
  double mass = 0.0;         ///< effective mirror mass (kg)
  double q_factor = 0.0;     ///< mechanical quality factor
  double length = 0.0;       ///< cavity length (m)
  double wavelength = 0.0;   ///< laser wavelength (m)
  double power = 0.0;        ///< input power (W)
  double kappa = 0.0;        ///< cavity amplitude decay rate (rad/s)
  double detuning = 0.0;     ///< bare detuning omega_cav - omega_laser (rad/s)
  double gain = 0.0;         ///< parametric gain G (rad/s)
  double theta = 0.0;        ///< pump phase (rad), in [0, 2 pi)
  double eta = 0.0;          ///< Kerr anharmonicity (rad/s per photon)
  double temperature = 0.0;  ///< bath temperature (K)
};

struct ValidationIssue {
  std::string field;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> violations;
  std::vector<ValidationIssue> warnings;

  bool ok() const noexcept { return violations.empty(); }
};

/// Checks the parameter invariants. Never throws; hard violations and soft
/// warnings (adiabatic limit, sideband resolution) are listed separately.
ValidationReport validate(const SystemParams& p);

/// Quantities derived from SystemParams with the standard Fabry-Perot
/// relations:
///   g_m = omega_cav / L,   epsilon = sqrt(2 kappa P / (hbar omega_cav)).
/// These two are the only place where the drive and the coupling are tied to
/// (P, lambda, L); swap them here if a different convention is wanted.
struct DerivedParams {
  SystemParams input;
  double gamma_m = 0.0;    ///< omega_m / Q (rad/s)
  double omega_cav = 0.0;  ///< 2 pi c / lambda (rad/s)
  double g_m = 0.0;        ///< optomechanical coupling (rad/s per m)
  double g0 = 0.0;         ///< sqrt(hbar / 2 m omega_m) g_m (rad/s)
  double drive = 0.0;      ///< epsilon (1/s)
  double nbar = 0.0;       ///< thermal phonon occupancy at omega_m

  /// Copy with the radiation-pressure coupling replaced (g0 kept consistent).
  DerivedParams with_coupling(double g_m_new) const;
  /// Copy with the drive amplitude replaced.
  DerivedParams with_drive(double drive_new) const;

  /// Slope of the effective detuning in the intensity:
  /// Delta'(I) = Delta_0 + detuning_slope() * I.
  double detuning_slope() const noexcept;
  /// hbar g_m^2 / (m omega_m^2): radiation-pressure detuning shift per photon.
  double radiation_pressure_shift() const noexcept;
};

/// Throws Error(InvalidParameter) naming the first offending field.
DerivedParams derive_params(const SystemParams& p);

/// [exp(hbar w / kB T) - 1]^-1, zero at T = 0.
double thermal_occupancy(double omega, double temperature) noexcept;

}  // namespace optokerr
