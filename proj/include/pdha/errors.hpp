#pragma once

#include <stdexcept>
#include <string>

namespace pdha {

/// Raised when a constructor or operation receives arguments that violate
/// its preconditions (bad parameter ranges, mismatched sizes, ...).
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when a coordinate falls outside the admissible domain.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Raised when an operation requires a grid property the given grid lacks
/// (e.g. the momentum stencils need uniform spacing in the flat coordinate).
class UnsupportedGridError : public std::runtime_error {
 public:
  explicit UnsupportedGridError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pdha
