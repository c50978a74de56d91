#include "kratzer/error.hpp"

namespace kratzer {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::Load: return "LoadError";
    case ErrorKind::NoMinimumInBracket: return "NoMinimumInBracket";
    case ErrorKind::NotAMinimum: return "NotAMinimum";
    case ErrorKind::NotApplicable: return "NotApplicable";
    case ErrorKind::DegenerateScreening: return "DegenerateScreening";
    case ErrorKind::SingularCorrection: return "SingularCorrection";
    case ErrorKind::NoBoundStates: return "NoBoundStates";
    case ErrorKind::MissingLevel: return "MissingLevel";
    case ErrorKind::Underdetermined: return "Underdetermined";
    case ErrorKind::CrossCheckFailed: return "CrossCheckFailed";
  }
  return "Error";
}

}  // namespace kratzer
