#pragma once

#include <stdexcept>
#include <string>

namespace thermoecon {

// Raised when a schema or config file is malformed; `path` points at the
// offending field ("/economy/agents/3/utility/type").
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// A sampler was asked for a draw from a non-integrable or empty density.
class SamplingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numeric procedure failed to converge; the message carries diagnostics.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace thermoecon
