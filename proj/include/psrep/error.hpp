#pragma once

#include <stdexcept>
#include <string>

namespace psrep {

// Error categories shared by every module; mirrored one-to-one by the
// psrep_status codes of the C API.
enum class ErrorCode {
  InvalidArgument = 1,
  Parse = 2,
  Domain = 3,
  Budget = 4,
  Inconsistent = 5,
  Io = 6,
  Internal = 7,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace psrep
