#pragma once

#include <stdexcept>
#include <string>

namespace hypdiam {

// Bad caller-supplied parameter (out-of-range ell, epsilon, genus, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Requested radius beyond what double precision supports.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Node budget exhausted. Carries whatever partial result the caller attached.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A construction failed its own self-check.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Operation undefined on this input (e.g. diameter of a disconnected surface).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace hypdiam
