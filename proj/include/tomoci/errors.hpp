#pragma once

#include <stdexcept>
#include <string>

namespace tomoci {

// Bad input: dimension mismatch, out-of-range parameter, non-Hermitian matrix...
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The measurement design does not determine every estimated coordinate.
class NotInformationallyComplete : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Observed data cannot support the requested statistic (empty block,
// vanishing moments).
class DegenerateData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operation is mathematically undefined for the given input class, e.g.
// fidelity against a mixed target is not affine.
class Unsupported : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed counts file or report; the message carries the field path.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tomoci
