#pragma once

#include <stdexcept>
#include <string>

namespace lpdc {

/// Invalid physical configuration or malformed configuration file.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical request the current discretization cannot honour
/// (grid too small, delay outside the time window, no dip to measure...).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File system failures while reading configs or writing results.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lpdc
