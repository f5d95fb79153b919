#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace optokerr {

enum class ErrorKind {
  InvalidParameter,
  AboveThreshold,
  NoStableBranch,
  UnstableSystem,
  IllConditioned,
  ImaginaryMode,
  UnphysicalCM,
  Config,
  Io,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; `kind()` is what callers branch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace optokerr
