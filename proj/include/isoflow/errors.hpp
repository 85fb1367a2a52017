#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace isoflow {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dimension mismatches and malformed arguments.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the cases a closed-form table covers.
class UnsupportedArgument : public Error {
 public:
  using Error::Error;
};

/// Matrix model violates a structural requirement (abelian 𝔞, Iwasawa split, ...).
class ModelError : public Error {
 public:
  using Error::Error;
};

/// Root-space eigenvalues could not be grouped unambiguously.
class DecompositionError : public Error {
 public:
  using Error::Error;
};

/// Root datum or foliation parameters are inconsistent.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Vector outside the domain of an operator (e.g. not a normal vector).
class DomainError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Flow integration hit a non-finite state; carries the last finite sample.
class IntegrationError : public NumericalError {
 public:
  IntegrationError(const std::string& what, double last_time, std::vector<double> last_state)
      : NumericalError(what), last_time_(last_time), last_state_(std::move(last_state)) {}
  double last_time() const { return last_time_; }
  const std::vector<double>& last_state() const { return last_state_; }

 private:
  double last_time_;
  std::vector<double> last_state_;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace isoflow
