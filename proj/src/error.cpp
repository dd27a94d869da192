#include "fracdim/error.hpp"

namespace fracdim {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::parameter: return "parameter error";
    case ErrorKind::domain: return "domain error";
    case ErrorKind::resource: return "resource error";
    case ErrorKind::parse: return "parse error";
    case ErrorKind::empty_set: return "empty-set error";
    case ErrorKind::unsupported_oracle: return "unsupported-oracle error";
    case ErrorKind::certificate_violation: return "certificate violation";
  }
  return "error";
}

void raise(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace fracdim
