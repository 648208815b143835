#pragma once

#include <stdexcept>
#include <string>

namespace ietlab {

// Bad input: non-positive length, reducible permutation, malformed config.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Rauzy comparison hit an exact (or within-tolerance) tie; the induction
// map is undefined there.
struct DegeneracyError : std::runtime_error {
  explicit DegeneracyError(const std::string& what) : std::runtime_error(what) {}
};

// An orbit/return-time computation exceeded its iteration budget.
struct BudgetError : std::runtime_error {
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// Point outside [0, |lambda|), or an element fed to the wrong backend.
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

struct BackendMismatchError : std::runtime_error {
  explicit BackendMismatchError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ietlab
