#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace solenoid_lab {

enum class ErrorCode {
  WindingTooSmall,
  SheetOverlap,
  ImageEscapes,
  NotInImage,
  Overflow,
  NotCoprime,
  NonPositiveP,
  DegenerateFit,
  InvalidArgument,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above; the
/// CLI prints the code name as the first token of its diagnostic.
class LabError : public std::runtime_error {
 public:
  LabError(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace solenoid_lab
