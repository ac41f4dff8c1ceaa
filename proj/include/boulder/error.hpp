#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace boulder {

enum class Errc {
  SingularMatrix,
  NotSymmetric,
  NotPositiveDefinite,
  DimensionMismatch,
  NotNested,
  EmptyGroundSet,
  GroundMismatch,
  RankMismatch,
  MissingParam,
  HypothesisViolated,
  NonRegularLambda,
  CellBudgetExceeded,
  SamplingExhausted,
  InvalidRank,
  ParseError,
};

constexpr std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::SingularMatrix: return "SingularMatrix";
    case Errc::NotSymmetric: return "NotSymmetric";
    case Errc::NotPositiveDefinite: return "NotPositiveDefinite";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NotNested: return "NotNested";
    case Errc::EmptyGroundSet: return "EmptyGroundSet";
    case Errc::GroundMismatch: return "GroundMismatch";
    case Errc::RankMismatch: return "RankMismatch";
    case Errc::MissingParam: return "MissingParam";
    case Errc::HypothesisViolated: return "HypothesisViolated";
    case Errc::NonRegularLambda: return "NonRegularLambda";
    case Errc::CellBudgetExceeded: return "CellBudgetExceeded";
    case Errc::SamplingExhausted: return "SamplingExhausted";
    case Errc::InvalidRank: return "InvalidRank";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace boulder
