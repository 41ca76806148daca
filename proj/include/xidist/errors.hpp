#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace xidist {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the operation's domain (including NaN inputs).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation at a pole: log_gamma at non-positive integers, zeta at s = 1.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

/// The requested accuracy could not be certified; carries the bound that was reached.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double achieved_bound)
      : Error(what + " (achieved error bound " + std::to_string(achieved_bound) + ")"),
        achieved_bound_(achieved_bound) {}

  double achieved_bound() const noexcept { return achieved_bound_; }

 private:
  double achieved_bound_;
};

/// A Levy-Khintchine integrand that is not integrable against its measure.
class NonIntegrableError : public DomainError {
 public:
  using DomainError::DomainError;
};

class InsufficientZerosError : public Error {
 public:
  using Error::Error;
};

/// The sign-change scan disagrees with the zero-counting estimate.
class MissedZeroError : public Error {
 public:
  MissedZeroError(const std::string& what, double checkpoint)
      : Error(what), checkpoint_(checkpoint) {}

  double checkpoint() const noexcept { return checkpoint_; }

 private:
  double checkpoint_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ChecksumError : public Error {
 public:
  using Error::Error;
};

}  // namespace xidist
