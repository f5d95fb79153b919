#pragma once

#include <string>
#include <vector>

#include "optokerr/harness/config.hpp"

namespace optokerr::harness {

/// Ids accepted by preset(): fig2 ... fig10.
const std::vector<std::string>& preset_ids();

/// Frozen configuration for one figure, every curve variant included.
/// Throws Error(Config) for an unknown id.
ExperimentConfig preset(const std::string& id);

}  // namespace optokerr::harness
