#pragma once

#include <stdexcept>
#include <string>

namespace lplab {

// Bad operands or malformed input (group/mode mismatch, parse errors,
// out-of-range parameters). CLI maps this to exit code 2.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// A configurable cap was exceeded (ball vertex cap, matrix size cap,
// exact-arithmetic overflow). CLI maps this to exit code 3.
class ResourceLimitError : public std::runtime_error {
 public:
  explicit ResourceLimitError(const std::string& what)
      : std::runtime_error(what) {}
};

// A library invariant failed (exact division left a remainder, maximum
// principle violated at a converged solution). Signals a bug, not bad
// input. CLI maps this to exit code 5.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace lplab
