#pragma once

#include <stdexcept>
#include <string>

namespace cubedim {

// Error kinds raised by library operations. Operations that *evaluate* data
// (metric validation, tree validation, estimate checks) report failures in
// their result objects instead of throwing.
enum class Errc {
  InvalidParams,
  SeedConflict,
  InstanceTooLarge,
  InvalidScales,
  TooDeep,
  TooLarge,
  DeltaOutOfRange,
  SandwichViolation,
  SourceMismatch,
  DepthExceeded,
  POutOfRange,
  EtaInvalid,
  StructureError,
  NotEnoughInteriorChildren,
  TreeTooShallow,
  ParamsOutOfRange,
  WindowInvalid,
  TargetBelowSetDimension,
  TargetNotBracketed,
  NotApplicable,
};

inline const char* to_string(Errc c) {
  switch (c) {
    case Errc::InvalidParams: return "InvalidParams";
    case Errc::SeedConflict: return "SeedConflict";
    case Errc::InstanceTooLarge: return "InstanceTooLarge";
    case Errc::InvalidScales: return "InvalidScales";
    case Errc::TooDeep: return "TooDeep";
    case Errc::TooLarge: return "TooLarge";
    case Errc::DeltaOutOfRange: return "DeltaOutOfRange";
    case Errc::SandwichViolation: return "SandwichViolation";
    case Errc::SourceMismatch: return "SourceMismatch";
    case Errc::DepthExceeded: return "DepthExceeded";
    case Errc::POutOfRange: return "POutOfRange";
    case Errc::EtaInvalid: return "EtaInvalid";
    case Errc::StructureError: return "StructureError";
    case Errc::NotEnoughInteriorChildren: return "NotEnoughInteriorChildren";
    case Errc::TreeTooShallow: return "TreeTooShallow";
    case Errc::ParamsOutOfRange: return "ParamsOutOfRange";
    case Errc::WindowInvalid: return "WindowInvalid";
    case Errc::TargetBelowSetDimension: return "TargetBelowSetDimension";
    case Errc::TargetNotBracketed: return "TargetNotBracketed";
    case Errc::NotApplicable: return "NotApplicable";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace cubedim
