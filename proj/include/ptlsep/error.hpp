#pragma once

#include <stdexcept>
#include <string>

namespace ptlsep {

enum class ErrorKind {
  invalid_argument,
  alphabet_mismatch,
  parse,
  reserved_symbol,
  ill_formed_instance,
  not_downward_closed,
  guard,
  io,
};

const char* to_string(ErrorKind kind);

/// All library failures are reported through this exception. The kind is
/// what the CLI maps onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ptlsep
