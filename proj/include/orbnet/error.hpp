#pragma once

#include <stdexcept>
#include <string>

namespace orbnet {

// Every failure the library reports maps onto one of these codes. The C API
// hands the numeric value straight back to callers, so keep the values stable.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kSubsurfacePoint = 2,
  kRadiusOutOfRange = 3,
  kInvalidWalkerSpec = 4,
  kTleChecksum = 5,
  kTleFormat = 6,
  kInvalidFraction = 7,
  kNonPositiveInput = 8,
  kElevationOutOfRange = 9,
  kNotVisible = 10,
  kZeroUsers = 11,
  kNoPassObserved = 12,
  kNoServedUsers = 13,
  kEmptyRegion = 14,
  kParse = 15,
  kValidation = 16,
  kIo = 17,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Errors that point at a line of some text input (TLE files, configs).
class LineError : public Error {
 public:
  LineError(ErrorCode code, int line, const std::string& what)
      : Error(code, "line " + std::to_string(line) + ": " + what), line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

// Config validation failures carry the dotted key path of the offending field.
class ValidationError : public Error {
 public:
  ValidationError(std::string key, const std::string& reason)
      : Error(ErrorCode::kValidation, key + ": " + reason), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace orbnet
