#pragma once

#include <stdexcept>
#include <string>

namespace sesq {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed textual input: field specs, element/polynomial/matrix literals.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& msg) : Error("parse error: " + msg) {}
};

// An operation would enumerate more elements than the configured cap allows.
class CapError : public Error {
 public:
  explicit CapError(const std::string& msg) : Error("enumeration cap exceeded: " + msg) {}
};

// Values from different field contexts were mixed in one operation.
class ContextError : public Error {
 public:
  explicit ContextError(const std::string& msg) : Error("context mismatch: " + msg) {}
};

// Invalid mathematical input (non-prime characteristic, reducible modulus, ...).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

// A form whose singular reduced part falls outside the brute-force fallback range.
class UnclassifiedError : public Error {
 public:
  explicit UnclassifiedError(const std::string& msg) : Error("unclassified: " + msg) {}
};

// A construction hypothesis failed; the message names the violated condition.
class HypothesisError : public Error {
 public:
  explicit HypothesisError(const std::string& msg) : Error("hypothesis failed: " + msg) {}
};

}  // namespace sesq
