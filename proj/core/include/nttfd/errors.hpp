#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nttfd {

enum class ErrorCode {
  InvalidModulus,
  InvalidRoot,
  MissingPsi,
  InvalidLength,
  InvalidResidue,
  InversionOfZero,
  LengthMismatch,
  OrderingMismatch,
  InvalidCoding,
  InvalidArgument,
  InvalidFaultCount,
  InvalidFaultPlan,
  SiteCountMismatch,
  ConfigError,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so that
// callers (and tests) can dispatch on the category rather than on text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace nttfd
