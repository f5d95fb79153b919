#pragma once

#include <random>

#include "fixtures.hpp"
#include "optokerr/error.hpp"
#include "optokerr/steadystate.hpp"

namespace draws {

/// Random parameters over a box that contains both stable and unstable
/// steady states (red and blue detuning, gain up to past threshold).
inline optokerr::SystemParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto p = fixtures::base(1e-3 + 9e-3 * u(rng), (1.0 + 19.0 * u(rng)) * 1e-12, (0.1 + 49.9 * u(rng)) * 1e-3,
                          0.01 + 0.99 * u(rng), -2.0 + 4.0 * u(rng), 0.0, 0.05 * u(rng), u(rng));
  p.gain = 0.6 * u(rng) * p.kappa;
  p.theta = optokerr::constants::two_pi * u(rng);
  if (p.theta >= optokerr::constants::two_pi) p.theta = 0.0;
  return p;
}

/// Lowest usable branch of a random draw; retries until one exists.
inline std::pair<optokerr::DerivedParams, optokerr::SteadyState> random_state(std::mt19937_64& rng) {
  for (;;) {
    const optokerr::DerivedParams d = optokerr::derive_params(random_params(rng));
    const optokerr::BranchSet set = optokerr::solve_branches(d);
    for (const auto& b : set.branches)
      if (b.state.usable) return {d, b.state};
  }
}

}  // namespace draws
