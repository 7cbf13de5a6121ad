#pragma once

#include <stdexcept>
#include <string>

namespace cz {

// Precondition violations and malformed input. The CLI maps these to exit code 2.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class GridMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Field-file schema violations; `path` is the JSON pointer of the offending entry.
class SchemaError : public InvalidArgument {
 public:
  SchemaError(const std::string& path, const std::string& what)
      : InvalidArgument("schema error at " + path + ": " + what), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

// Internal consistency failures (two routes disagree, NaN, truncation bound not met).
// The CLI maps these to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cz
