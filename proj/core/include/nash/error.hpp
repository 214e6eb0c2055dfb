#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nash {

/// Failure modes raised by the library. The enumerator names are stable and
/// appear verbatim on the CLI's stderr.
enum class Errc {
  ZeroPolynomial,
  GcdIllConditioned,
  BothConstantInW,
  NoConvergence,
  ConstantInZandW,
  EmptyRegion,
  NearExcludedPoint,
  StepUnderflow,
  NewtonDivergence,
  AmbiguousMatching,
  NoZeroBranch,
  MultipleZeroBranches,
  NotClassB,
  NullOnK,
  BoundaryZero,
  ConstantBranch,
  SkippedDelta,
  InvalidArgument,
  ParseError,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }
  std::string_view name() const noexcept { return to_string(code_); }

 private:
  Errc code_;
};

/// True for errors caused by bad input rather than by the numerics.
inline bool is_validation_error(Errc code) noexcept {
  return code == Errc::InvalidArgument || code == Errc::ParseError;
}

}  // namespace nash
