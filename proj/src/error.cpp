#include "optosteer/error.hpp"

namespace optosteer {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::NonPhysicalState: return "NonPhysicalState";
    case ErrorKind::UnsupportedForm: return "UnsupportedForm";
    case ErrorKind::UnsupportedConfiguration: return "UnsupportedConfiguration";
    case ErrorKind::IntegrationError: return "IntegrationError";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace optosteer
