#pragma once

#include <stdexcept>
#include <string>

namespace erasure_chi {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonHermitianInput : public Error {
 public:
  using Error::Error;
};

class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

/// A scalar map was undefined on some eigenvalue, or an argument was out of range.
class DomainError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidRank : public Error {
 public:
  using Error::Error;
};

class InvalidDistribution : public Error {
 public:
  using Error::Error;
};

class RankDeficientBath : public Error {
 public:
  using Error::Error;
};

class InvalidPOVM : public Error {
 public:
  using Error::Error;
};

class SupportError : public Error {
 public:
  using Error::Error;
};

/// Two routes to the same quantity disagreed, or round-off exceeded its budget.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

/// Malformed ensemble document. `where()` names the line or field at fault.
class ParseError : public Error {
 public:
  ParseError(std::string where, const std::string& what)
      : Error("parse error at " + where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

/// A value violated a domain invariant. `invariant()` is a short tag such as
/// "probabilities", "hermiticity", "trace" or "positivity".
class ValidationError : public Error {
 public:
  ValidationError(std::string invariant, const std::string& detail)
      : Error("validation failed (" + invariant + "): " + detail),
        invariant_(std::move(invariant)) {}
  const std::string& invariant() const noexcept { return invariant_; }

 private:
  std::string invariant_;
};

}  // namespace erasure_chi
