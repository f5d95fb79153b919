#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "optokerr/linalg/polynomial.hpp"
#include "optokerr/sysparams.hpp"
#include "optokerr/types.hpp"

namespace optokerr {

/// One fixed point of the mean-field equations.
struct SteadyState {
  Complex amplitude{0.0, 0.0};  ///< a_s (sqrt photon number)
  double intensity = 0.0;       ///< I = |a_s|^2
  double position = 0.0;        ///< q_s (m)
  double momentum = 0.0;        ///< p_s, identically zero
  double detuning_eff = 0.0;    ///< Delta' = Delta_0 - g_m q_s + 2 eta I
  double detuning_rp = 0.0;     ///< Delta = Delta_0 - g_m q_s
  double detuning_kerr = 0.0;   ///< Delta_1 = Delta + 4 eta I
  std::size_t branch = 0;       ///< index into the BranchSet it came from
  bool usable = true;           ///< false above the parametric threshold
  bool stable = false;
};

struct Branch {
  double intensity = 0.0;
  double poly_residual = 0.0;   ///< |P(I)| / sum_k |c_k| I^k
  double fixed_point_residual = 0.0;  ///< in units of epsilon
  SteadyState state;
};

/// All nonnegative real roots of the intensity polynomial, ascending.
struct BranchSet {
  linalg::Polynomial<double> polynomial;
  std::vector<Branch> branches;

  bool empty() const noexcept { return branches.empty(); }
  std::size_t size() const noexcept { return branches.size(); }

  /// Header plus one row per branch: I, Re a_s, Im a_s, Delta', stable.
  std::string to_csv() const;
};

enum class BranchPolicy { LowestStable, Lowest, Highest, Index };

struct BranchSelection {
  BranchPolicy policy = BranchPolicy::LowestStable;
  std::size_t index = 0;

  /// Accepts "lowest_stable", "lowest", "highest" or "index:<n>".
  static BranchSelection parse(const std::string& text);
  std::string to_string() const;
};

/// P(I) = I (kappa^2 + Delta'^2 - 4G^2)^2
///        - eps^2 [(kappa + 2G cos th)^2 + (Delta' - 2G sin th)^2],
/// with Delta'(I) = Delta_0 + s I. Coefficients ascending, degree <= 5.
linalg::Polynomial<double> intensity_polynomial(const DerivedParams& d);

/// Both sides of the self-consistency evaluated directly (not through the
/// expanded coefficients); lhs - rhs.
double self_consistency_residual(const DerivedParams& d, double intensity);

/// Builds the steady state that corresponds to a given intensity root.
/// Stability is not evaluated.
SteadyState state_at_intensity(const DerivedParams& d, double intensity);

/// |(kappa + i Delta') a - 2 G e^{i theta} a* - eps| with Delta' recomputed
/// from |a|^2.
double fixed_point_residual(const DerivedParams& d, const Complex& amplitude);

BranchSet solve_branches(const DerivedParams& d);

/// Throws NoStableBranch (default policy), AboveThreshold (policy picks an
/// unusable root) or InvalidParameter (index out of range).
SteadyState steady_state(const DerivedParams& d, BranchSelection policy = {});
SteadyState steady_state(const BranchSet& set, BranchSelection policy = {});

}  // namespace optokerr
