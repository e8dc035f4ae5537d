#pragma once

#include <stdexcept>
#include <string>

namespace mcpiso {

// Base for every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the domain of a function (non-finite N, x outside (0,D), ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Caller-side precondition that could be detected at runtime.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Root finding target not bracketed by [g(lo), g(hi)].
class BracketError : public Error {
 public:
  using Error::Error;
};

// Search produced no candidate inside the volume window.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// Iterative method ran out of budget. Carries the best estimate so far.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double best_estimate)
      : Error(what), best_estimate_(best_estimate) {}
  double best_estimate() const noexcept { return best_estimate_; }

 private:
  double best_estimate_;
};

}  // namespace mcpiso
