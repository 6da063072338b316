#pragma once

#include <stdexcept>
#include <string>

namespace cifs {

// Precondition on a geometric or parameter domain was violated.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

// A finite truncation came out empty where at least one element is required.
class EmptySetError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Word space or grid too large for exhaustive enumeration.
class ResourceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Root finder could not establish a sign change.
class BracketError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Empirical constant or exponent fit could not be formed from the given grid.
class EstimationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace cifs
