#pragma once

#include <cmath>

#include "optokerr/constants.hpp"
#include "optokerr/sysparams.hpp"

namespace fixtures {

inline optokerr::SystemParams base(double length, double mass, double power, double kappa_ratio, double detuning_ratio,
                                   double gain, double eta, double temperature = 0.4) {
  optokerr::SystemParams p;
  p.omega_m = optokerr::constants::two_pi * 10e6;
  p.mass = mass;
  p.q_factor = 5e5;
  p.length = length;
  p.wavelength = 1064e-9;
  p.power = power;
  p.kappa = kappa_ratio * p.omega_m;
  p.detuning = detuning_ratio * p.omega_m;
  p.gain = gain;
  p.theta = optokerr::constants::pi / 2.0;
  p.eta = eta;
  p.temperature = temperature;
  return p;
}

inline optokerr::SystemParams fig2(double gain_over_kappa, double eta) {
  auto p = base(1e-3, 10e-12, 6.9e-3, 0.1, 1.0, 0.0, eta);
  p.gain = gain_over_kappa * p.kappa;
  return p;
}
inline optokerr::SystemParams fig3(double eta, double gain) { return base(3e-3, 12e-12, 9e-3, 0.02, 1.0, gain, eta); }
inline optokerr::SystemParams fig4(double eta, double gain) { return base(1e-3, 10e-12, 30e-3, 0.01, 1.0, gain, eta); }
inline optokerr::SystemParams fig5(double eta, double gain) { return base(2e-3, 10e-12, 6.9e-3, 0.01, 1.0, gain, eta); }
inline optokerr::SystemParams fig7(double eta, double gain) { return base(10e-3, 10e-12, 6.9e-3, 0.7, 1.0, gain, eta); }
inline optokerr::SystemParams fig8(double eta, double gain, double detuning_ratio) {
  return base(10e-3, 10e-12, 6.9e-3, 0.7, detuning_ratio, gain, eta);
}
inline optokerr::SystemParams fig9(double eta, double gain, double detuning_ratio) {
  return base(1e-3, 10e-12, 15e-3, 0.9, detuning_ratio, gain, eta);
}

/// Five coexisting intensity roots.
inline optokerr::SystemParams multistable() {
  auto p = base(1e-3, 10e-12, 6.9e-3, 0.1, -2.0, 0.0, 0.01);
  p.gain = p.kappa;
  return p;
}

inline bool close_rel(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)); }

}  // namespace fixtures
