#include "nash/error.hpp"

namespace nash {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::GcdIllConditioned: return "GcdIllConditioned";
    case Errc::BothConstantInW: return "BothConstantInW";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::ConstantInZandW: return "ConstantInZandW";
    case Errc::EmptyRegion: return "EmptyRegion";
    case Errc::NearExcludedPoint: return "NearExcludedPoint";
    case Errc::StepUnderflow: return "StepUnderflow";
    case Errc::NewtonDivergence: return "NewtonDivergence";
    case Errc::AmbiguousMatching: return "AmbiguousMatching";
    case Errc::NoZeroBranch: return "NoZeroBranch";
    case Errc::MultipleZeroBranches: return "MultipleZeroBranches";
    case Errc::NotClassB: return "NotClassB";
    case Errc::NullOnK: return "NullOnK";
    case Errc::BoundaryZero: return "BoundaryZero";
    case Errc::ConstantBranch: return "ConstantBranch";
    case Errc::SkippedDelta: return "SkippedDelta";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace nash
