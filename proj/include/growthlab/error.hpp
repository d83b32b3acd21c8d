#pragma once

#include <stdexcept>
#include <string>

namespace growthlab {

// Every recoverable failure in the library is reported as an Error with a
// machine-readable kind. The CLI maps these to structured diagnostics and
// exit status 1; anything else escaping is a bug.
enum class ErrorKind {
  shape,     // matrix/vector dimensions inconsistent
  domain,    // argument outside the operation's domain
  order,     // level arguments out of order (s > t)
  range,     // request exceeds tabulated data
  input,     // malformed user input (unknown letter, bad schema value)
  parse,     // unreadable file / invalid JSON
  cap,       // a configured resource cap was exceeded
  invalid_complex,
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

const char* error_kind_name(ErrorKind k);

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace growthlab
