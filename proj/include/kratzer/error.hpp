#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kratzer {

enum class ErrorKind {
  Domain,
  InvalidParameter,
  Load,
  NoMinimumInBracket,
  NotAMinimum,
  NotApplicable,
  DegenerateScreening,
  SingularCorrection,
  NoBoundStates,
  MissingLevel,
  Underdetermined,
  CrossCheckFailed,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace kratzer
