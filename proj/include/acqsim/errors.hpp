#pragma once

#include <stdexcept>
#include <string>

namespace acqsim {

// Bad run-configuration input (file missing, malformed JSON, schema violation).
// The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Integration could not meet its quality contract (step-size underflow,
// trace drift beyond tolerance). The CLI maps this to exit code 3.
class IntegrationError : public std::runtime_error {
 public:
  explicit IntegrationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace acqsim
