#pragma once

#include <stdexcept>
#include <string>

namespace psc {

enum class ErrorCode {
  Parse,            // malformed input text
  Invalid,          // structural invariant violated (arity, indices, lengths)
  DivisionByZero,   // a division gate hit a zero denominator
  Precondition,     // caller-checkable precondition failed
  Budget,           // exhaustive sweep would exceed the configured budget
  RetriesExhausted, // randomized search gave up
  Unsupported,      // operation not defined for this input
  Internal,         // should not happen
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace psc
