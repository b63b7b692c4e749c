#pragma once

#include <stdexcept>
#include <string>

namespace hexb {

// Invalid or inconsistent configuration (bad JSON, violated invariants).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem failure while writing results.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hexb
