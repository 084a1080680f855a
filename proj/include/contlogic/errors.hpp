#pragma once

#include <stdexcept>
#include <string>

namespace contlogic {

/// Malformed input to an operation: wrong arity, unbound variable, sort clash,
/// a table that is not total, and similar shape problems.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Well-formed input outside an operation's domain (epsilon = 0, weights that do
/// not sum to one, a modulus that vanishes away from zero, ...).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact arithmetic left the representable range. Never silently rounded.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

}  // namespace contlogic
