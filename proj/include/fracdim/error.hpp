#pragma once

#include <stdexcept>
#include <string>

namespace fracdim {

enum class ErrorKind {
  parameter,
  domain,
  resource,
  parse,
  empty_set,
  unsupported_oracle,
  certificate_violation,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void raise(ErrorKind kind, const std::string& message);

}  // namespace fracdim
