#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "optokerr/linearized.hpp"
#include "optokerr/steadystate.hpp"
#include "optokerr/sysparams.hpp"
#include "optokerr/types.hpp"

namespace optokerr {

/// Parameters of the mirror susceptibility
///   chi(w) = (beta_2 + (kappa + i w)^2) / (m d(w)),
///   d(w) = (omega_m^2 - w^2 + i w gamma_m)(beta_2 + (kappa + i w)^2) - beta_1.
struct SusceptibilityParams {
  double beta0 = 0.0;  ///< 2 hbar g_m^2 Delta I / m
  double beta1 = 0.0;  ///< (2 hbar g_m^2 / m)[Delta' I - 2G Im(a_s^2 e^{-i th})]
  double beta2 = 0.0;  ///< Delta_1^2 - |A|^2
  Complex parametric{0.0, 0.0};  ///< A = 2G e^{i th} - 2i eta a_s^2
  Complex amplitude{0.0, 0.0};
  double intensity = 0.0;
  double detuning_eff = 0.0;
  double detuning_kerr = 0.0;
  double gain = 0.0;
  double kappa = 0.0;
  double gamma_m = 0.0;
  double omega_m = 0.0;
  double mass = 0.0;
  double g_m = 0.0;

  Complex optical_factor(double omega) const noexcept;  ///< beta_2 + (kappa + i w)^2
  Complex denominator(double omega) const noexcept;     ///< d(w)
  Complex susceptibility(double omega) const noexcept;  ///< chi(w)
  double delta2_sq(double omega) const noexcept;        ///< kappa^2 + w^2 + 4G^2 + Delta'^2
};

SusceptibilityParams coupling_params(const DerivedParams& d, const SteadyState& ss);

/// Sampled real spectrum.
struct SpectrumGrid {
  VectorX omega;   ///< rad/s, strictly increasing
  VectorX values;
  std::string quantity;
  std::string units;
  std::string normalization;
};

/// n points from lo to hi inclusive.
VectorX linear_grid(double lo, double hi, std::size_t n);

enum class SpectrumForm {
  Exact,             ///< closed form equivalent to the matrix solution
  PrintedNumerator,  ///< radiation-pressure numerator I delta_2^2 + 4G Re(a^2 e^{-i th}(kappa + i Delta'))
};

/// Symmetrized displacement spectrum (m^2 s). Throws UnstableSystem.
SpectrumGrid displacement_spectrum(const VectorX& omega, const DerivedParams& d, const SteadyState& ss,
                                   SpectrumForm form = SpectrumForm::Exact);

/// Same quantity from a direct 4x4 complex solve of (i w - M) u = n at each
/// sample with the symmetrized input correlators. Throws UnstableSystem.
SpectrumGrid displacement_spectrum_oracle(const VectorX& omega, const DriftMatrix& m, const NoiseModel& noise);

struct Peak {
  double omega = 0.0;
  double value = 0.0;
  std::size_t index = 0;
};

/// Interior local maxima with 3-point parabolic refinement.
std::vector<Peak> find_peaks(const SpectrumGrid& s);

struct NormalModes {
  double omega_plus = 0.0;
  double omega_minus = 0.0;
  /// splitting exceeds kappa + gamma_m, the regime where the estimate applies
  bool resolved = false;
};

/// omega_pm^2 = (omega_m^2 + beta_2 +- sqrt((omega_m^2 - beta_2)^2 + 4 beta_1)) / 2.
/// Throws ImaginaryMode when omega_-^2 < 0.
NormalModes normal_modes(const SusceptibilityParams& sp, double omega_m);

/// chi^-1 = m (omega_eff^2 - w^2) + i w Gamma_paper.
struct EffectiveResponse {
  VectorX omega;
  VectorX omega_eff_sq;  ///< rad^2/s^2, may go negative
  VectorX omega_eff;     ///< NaN where omega_eff_sq < 0
  VectorX gamma_phys;    ///< rad/s
  VectorX gamma_paper;   ///< m * gamma_phys (kg/s)
};

EffectiveResponse effective_response(const VectorX& omega, const SusceptibilityParams& sp);

struct CoolingResult {
  double n_m = 0.0;
  double t_eff = 0.0;
  double omega_eff = 0.0;
  double gamma_phys = 0.0;
};

/// Leading-order phonon number at w = omega_m. Throws UnstableSystem, or
/// ImaginaryMode when omega_eff^2 <= 0.
CoolingResult cooling_figures(const DerivedParams& d, const SteadyState& ss);

}  // namespace optokerr
