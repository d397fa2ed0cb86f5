#pragma once

#include <stdexcept>
#include <string>

namespace drs {

// Bad construction parameters: non-prime modulus, blocklength out of range,
// duplicate or zero evaluation seeds, malformed index vectors.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DivisionByZero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Extension-field elements from two different (p, g) contexts were combined.
class ContextMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Exactly two of the three received symbols coincide. No degree-one
// polynomial evaluated at distinct points can produce that pattern.
class InconsistentReceivedWord : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// No increasing index triple explains the received symbols.
class UnrecognizedReceivedWord : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exhaustive certification was asked to enumerate more than its budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed code-spec or symbol file.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace drs
