#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace optosteer {

enum class ErrorKind {
  InvalidInput,
  NonPhysicalState,
  UnsupportedForm,
  UnsupportedConfiguration,
  IntegrationError,
  ConfigError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so the
/// C API and the CLI can map it onto a status or exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace optosteer
