#pragma once

#include <stdexcept>
#include <string>

namespace hoch {

// Inputs that cannot be combined at all: mixed fields, mixed algebras,
// incompatible dimensions, malformed documents.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A mathematical precondition failed (parity, bidegree, non-cocycle...).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A structure failed validation (non-associative algebra, SI(n) != 0...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A spectral sequence cell or differential that is not available.
class UndefinedCell : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hoch
