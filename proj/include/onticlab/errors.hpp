#pragma once

#include <stdexcept>
#include <string>

namespace onticlab {

/// Input violates a mathematical precondition (bad norm, parameter out of
/// bounds, dimension mismatch).
class DomainError : public std::runtime_error {
public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// A vector or operator lies outside the subspace an operation requires
/// (e.g. a decomposition member outside the range of its target).
class RangeError : public std::runtime_error {
public:
  explicit RangeError(const std::string& what) : std::runtime_error(what) {}
};

/// Operation called on an object in the wrong state (e.g. asking for a
/// minimal contradiction of an instance that was never found infeasible).
class StateError : public std::runtime_error {
public:
  explicit StateError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed serialized input.
class ParseError : public std::runtime_error {
public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace onticlab
