#pragma once

#include <stdexcept>

namespace navtrust {

// Base of every exception thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid input: out-of-range parameters, malformed manifests, contract
// violations. Maps to CLI exit code 1.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Filesystem failure: unreadable frames, unwritable outputs. Exit code 2.
class IoError : public Error {
 public:
  using Error::Error;
};

// Remote endpoint failure (sanitizer / rewriter backends). Exit code 2.
class RemoteError : public Error {
 public:
  using Error::Error;
};

}  // namespace navtrust
