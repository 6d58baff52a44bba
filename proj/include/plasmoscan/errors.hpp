#pragma once

#include <stdexcept>
#include <string>

namespace plasmoscan {

/// Invalid user input: bad config values, malformed files. CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string &msg) : std::runtime_error(msg) {}
};

/// Internal numerical failure: non-convergence, broken identity. CLI exit code 3.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string &msg) : std::runtime_error(msg) {}
};

}  // namespace plasmoscan
