#pragma once

#include <stdexcept>
#include <string>

namespace kband {

/// Invalid configuration or precondition violation. CLI exit code 2.
class config_error : public std::runtime_error {
public:
  explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failure: ill-conditioning, branch-tracking breakdown,
/// near-zero field division. CLI exit code 3.
class numerical_error : public std::runtime_error {
public:
  explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// File I/O failure. CLI exit code 4.
class io_error : public std::runtime_error {
public:
  explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace kband
