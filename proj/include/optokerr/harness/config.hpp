#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "optokerr/steadystate.hpp"
#include "optokerr/sysparams.hpp"
#include "optokerr/types.hpp"

namespace optokerr::harness {

enum class TaskKind {
  SteadyState,
  StabilityMap,
  DisplacementSpectrum,
  EffectiveResponse,
  CoolingSweep,
  OutputSpectra,
  EntanglementSweep,
};

std::string_view to_string(TaskKind t) noexcept;
TaskKind parse_task(const std::string& text);

/// Physical parameters in config units. G and eta are angular rates; the
/// frequency of the mirror is given as an ordinary frequency in Hz, kappa and
/// the detuning as multiples of omega_m.
class ConfigParams {
 public:
  ConfigParams();

  static const std::vector<std::string>& names();
  static bool known(const std::string& name);

  double get(const std::string& name) const;
  void set(const std::string& name, double value);

  /// gain_over_kappa is accepted as an alias that sets gain_hz.
  SystemParams to_system() const;
  const std::map<std::string, double>& values() const noexcept { return values_; }

 private:
  std::map<std::string, double> values_;
};

struct SweepAxis {
  std::string name;
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 0;
  bool log = false;

  /// "name:min:max:n[:log]"
  static SweepAxis parse(const std::string& text);
  VectorX values() const;
  void validate() const;
};

struct GridSpec {
  double min_over_omega_m = 0.5;
  double max_over_omega_m = 1.5;
  std::size_t count = 4000;

  void validate() const;
};

struct Curve {
  std::string label;
  std::map<std::string, double> overrides;
};

struct ExperimentConfig {
  std::string name = "run";
  std::string description;
  TaskKind task = TaskKind::SteadyState;
  ConfigParams params;
  std::vector<Curve> curves;
  std::optional<SweepAxis> sweep;
  GridSpec grid;
  BranchSelection branch;
  std::string output = "out";

  /// Checks task/sweep compatibility, counts, and that every referenced
  /// parameter name exists. Throws Error(Config).
  void validate() const;
  /// Curves to evaluate; a single unnamed curve when none are listed.
  std::vector<Curve> effective_curves() const;
  ConfigParams curve_params(const Curve& c) const;
};

ExperimentConfig config_from_json_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);
std::string config_to_json_text(const ExperimentConfig& c);

}  // namespace optokerr::harness
