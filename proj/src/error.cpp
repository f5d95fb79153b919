#include "optokerr/error.hpp"

namespace optokerr {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidParameter: return "invalid_parameter";
    case ErrorKind::AboveThreshold: return "above_threshold";
    case ErrorKind::NoStableBranch: return "no_stable_branch";
    case ErrorKind::UnstableSystem: return "unstable";
    case ErrorKind::IllConditioned: return "ill_conditioned";
    case ErrorKind::ImaginaryMode: return "imaginary_mode";
    case ErrorKind::UnphysicalCM: return "unphysical_cm";
    case ErrorKind::Config: return "config_error";
    case ErrorKind::Io: return "io_error";
  }
  return "unknown";
}

}  // namespace optokerr
