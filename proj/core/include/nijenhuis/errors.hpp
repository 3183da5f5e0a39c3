#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nijenhuis {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in rings with different variable counts, or tensor shapes disagree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Two truncated series with different truncation orders met in a strict operation.
class OrderMismatch : public Error {
 public:
  using Error::Error;
};

/// A precondition on the mathematical input was violated (nonzero constant term in exp, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Exact division left a nonzero remainder.
class NotDivisible : public Error {
 public:
  using Error::Error;
};

/// A coordinate change or frame is degenerate where it must be invertible.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Model document violates the schema; `path` locates the offending entry (e.g. "L[1][2]").
class ModelError : public Error {
 public:
  ModelError(const std::string& path, const std::string& what)
      : Error(path.empty() ? what : path + ": " + what), path_(path) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace nijenhuis
