#pragma once

#include <optional>

#include "optokerr/linalg/polynomial.hpp"
#include "optokerr/linalg/routh_hurwitz.hpp"
#include "optokerr/steadystate.hpp"
#include "optokerr/sysparams.hpp"
#include "optokerr/types.hpp"

namespace optokerr {

/// Real coefficients entering the linearized drift.
struct LinearCoefficients {
  double a_plus = 0.0;         ///< g_m (a_s + a_s*) / 2
  double a_minus = 0.0;        ///< g_m (a_s - a_s*) / 2i
  double gamma1 = 0.0;         ///< 2G cos th + 2 eta Im(a_s^2)
  double delta1 = 0.0;         ///< 2G sin th - 2 eta Re(a_s^2)
  double detuning_kerr = 0.0;  ///< Delta_1
};

LinearCoefficients linear_coefficients(const DerivedParams& d, const SteadyState& ss);

/// Linearized dynamics du/dt = M u + noise over u = (dq, dp, dx, dy) with
/// x = a + a^dag, y = -i(a - a^dag).
struct DriftMatrix {
  Matrix4 matrix;         ///< SI units
  Vector4 scaling;        ///< S = diag(sqrt(m w_m/hbar), 1/sqrt(hbar m w_m), 1/sqrt2, 1/sqrt2)
  Matrix4 dimensionless;  ///< S M S^-1 (rad/s); quadratures with vacuum variance 1/2
  double time_scale = 1.0;  ///< omega_m
  /// det(z - M~/omega_m), ascending and monic.
  linalg::Polynomial<double> charpoly;
};

Vector4 quadrature_scaling(const DerivedParams& d);
DriftMatrix drift_matrix(const DerivedParams& d, const SteadyState& ss);
/// Wraps an arbitrary SI-basis matrix (used by tests and random draws).
DriftMatrix make_drift(const Matrix4& m, const DerivedParams& d);

/// Stability conditions in the closed form printed with the model. They mix
/// h and hbar and are kept for comparison only; `h` is 2 pi hbar here.
struct PrintedRouthDiagnostics {
  double s1 = 0.0, s2 = 0.0, s3 = 0.0;
  double r1 = 0.0, r2 = 0.0;
  bool all_positive() const noexcept { return s1 > 0.0 && s2 > 0.0 && s3 > 0.0; }
};

PrintedRouthDiagnostics printed_routh_diagnostics(const DerivedParams& d, const SteadyState& ss);

struct StabilityReport {
  Vector4c eigenvalues;      ///< rad/s, sorted by descending real part
  double max_real = 0.0;     ///< rad/s
  bool stable = false;       ///< max_real < 0; authoritative
  bool routh_stable = false;
  linalg::RouthResult<double> routh;
  std::optional<PrintedRouthDiagnostics> printed;

  bool verdicts_agree() const noexcept { return stable == routh_stable; }
};

/// Throws IllConditioned when the characteristic polynomial is not finite.
StabilityReport stability(const DriftMatrix& m);
/// As above, with the printed diagnostics attached.
StabilityReport stability(const DerivedParams& d, const SteadyState& ss);

/// Eigenvalues of iM with the optomechanical coupling removed:
/// -i kappa +- sqrt(beta_2) for the field and
/// -i gamma_m/2 +- sqrt(omega_m^2 - gamma_m^2/4) for the mirror.
struct DecoupledModes {
  Complex field_plus, field_minus;
  Complex mirror_plus, mirror_minus;
};

DecoupledModes field_mode_frequencies(const DerivedParams& d, const SteadyState& ss);

/// omega coth(hbar omega / 2 kB T), even in omega, |omega| at T = 0 and
/// 2 kB T / hbar at omega = 0.
double omega_coth(double omega, double temperature) noexcept;

/// Input noise statistics: white vacuum for the cavity port and the
/// Brownian kernel hbar m gamma_m omega [1 + coth(hbar omega / 2 kB T)].
struct NoiseModel {
  double kappa = 0.0;
  double gamma_m = 0.0;
  double mass = 0.0;
  double omega_m = 0.0;
  double temperature = 0.0;
  double nbar = 0.0;

  static NoiseModel from(const DerivedParams& d);

  /// <xi(w) xi(w')> kernel, non-symmetrized (kg^2 m^2 s^-3 scale).
  double brownian_kernel(double omega) const noexcept;
  /// Symmetrized Brownian density hbar m gamma_m omega coth(...).
  double brownian_symmetrized(double omega) const noexcept;
  /// Markovian diffusion diag(0, gamma_m(2 nbar + 1), kappa, kappa) in the
  /// dimensionless quadratures of DriftMatrix::dimensionless.
  Matrix4 diffusion() const;
};

}  // namespace optokerr
