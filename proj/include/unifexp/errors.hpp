#pragma once

#include <stdexcept>
#include <string>

namespace unifexp {

// Argument outside the mathematical domain of an operation (|x| >= 1, g <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Caller broke a contract: mismatched fields, wrong expression shape, bad flags.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A symbolic result left the closed {v^a delta^b} basis (a logarithm survived).
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Spectral representation too coarse for the requested accuracy.
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Arbitrary-precision computation failed to converge within its budget.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace unifexp
