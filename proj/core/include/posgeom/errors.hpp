#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace posgeom {

// Base class for all library errors. `code()` is a stable machine-readable
// identifier (e.g. "NotSimple", "HigherOrderPole") that the CLI maps to exit
// codes and tests assert on.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

// Malformed textual or JSON input.
class ParseError : public Error {
public:
  using Error::Error;
  explicit ParseError(const std::string& what) : Error("ParseError", what) {}
};

// A precondition of an operation is violated by otherwise well-formed data.
class DomainError : public Error {
public:
  using Error::Error;
};

// A recursive residue axiom or consistency check failed.
class VerificationError : public Error {
public:
  explicit VerificationError(const std::string& what)
      : Error("VerificationFailed", what) {}
};

}  // namespace posgeom
