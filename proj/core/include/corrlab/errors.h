#pragma once

#include <stdexcept>
#include <string>

namespace corrlab {

/// Raised when an input violates a documented precondition.
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when a request exceeds a hard size cap (enumeration, LP variables).
class ResourceError : public std::length_error {
 public:
  explicit ResourceError(const std::string& what) : std::length_error(what) {}
};

/// Raised when an independent re-check of a computed answer fails.
class VerificationError : public std::runtime_error {
 public:
  explicit VerificationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace corrlab
