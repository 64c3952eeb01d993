#pragma once

#include <stdexcept>
#include <string>

namespace zsat {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed configuration or report text (bad JSON, wrong types, unknown keys).
struct ParseError : Error {
  using Error::Error;
};

// Well-formed configuration that breaks a taxonomy invariant.
struct ValidationError : Error {
  using Error::Error;
};

// Fatal filesystem failures (missing scan root, unwritable output).
struct IoError : Error {
  using Error::Error;
};

}  // namespace zsat
