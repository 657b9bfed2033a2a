#pragma once

#include <stdexcept>
#include <string>

namespace multfree {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A documented precondition of an operation does not hold
// (non-smooth cone handed to weight extraction, invalid cocycle, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Malformed structured input. `path` is a JSON pointer to the offending value.
class InputError : public Error {
 public:
  InputError(std::string path, const std::string& what)
      : Error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace multfree
