#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace umbpsim {

// Invalid generator/cache/engine parameters. CLI maps these to exit code 2.
struct SpecError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : SpecError {
  using SpecError::SpecError;
};

// Trace file problems. CLI maps these to exit code 1.
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TruncationError : FormatError {
  std::size_t record_index;
  explicit TruncationError(std::size_t index)
      : FormatError("truncated trace record " + std::to_string(index)),
        record_index(index) {}
};

struct LookupError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ComparabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace umbpsim
