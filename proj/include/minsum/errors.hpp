// Exception types shared by the minsum library.
#pragma once

#include <stdexcept>
#include <string>

namespace minsum {

/// Invalid function-class or numeric parameter (e.g. mu >= L, negative radius).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Vectors or matrices of incompatible size.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A predicate was asked about a point where it is undefined, e.g. the
/// Gram-style matrix with x* on top of a summand minimizer.
class CoincidentPoints : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A scenario whose smoothness pattern no predicate covers, or a predicate
/// applied to a scenario outside its preconditions.
class UnsupportedScenario : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed scenario document.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace minsum
