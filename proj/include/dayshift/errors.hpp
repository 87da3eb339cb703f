#pragma once

#include <stdexcept>
#include <string>

namespace dayshift {

// Error taxonomy mirrors the CLI exit codes: config/usage (1), bad or
// inconsistent data (2), experiment that cannot run as requested (3).

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DataError : std::runtime_error {
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

struct InfeasibleError : std::runtime_error {
  explicit InfeasibleError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace dayshift
