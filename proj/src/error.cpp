#include "rectsub/error.hpp"

namespace rectsub {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Domain: return "domain";
    case ErrorCode::SingularMetric: return "singular-metric";
    case ErrorCode::RankDeficient: return "rank-deficient";
    case ErrorCode::DegeneratePlane: return "degenerate-plane";
    case ErrorCode::OrderInsufficient: return "order-insufficient";
    case ErrorCode::ZeroField: return "zero-field";
    case ErrorCode::SingularSystem: return "singular-system";
    case ErrorCode::InconsistentSample: return "inconsistent-sample";
    case ErrorCode::Precondition: return "precondition";
    case ErrorCode::DomainExit: return "domain-exit";
    case ErrorCode::VanishingTangent: return "vanishing-tangent";
    case ErrorCode::TooFewSamples: return "too-few-samples";
    case ErrorCode::ModelViolation: return "model-violation";
    case ErrorCode::NonPositiveWarp: return "non-positive-warp";
    case ErrorCode::NonNormal: return "non-normal";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::Schema: return "schema";
    case ErrorCode::DimensionMismatch: return "dimension-mismatch";
    case ErrorCode::InvalidArgument: return "invalid-argument";
  }
  return "unknown";
}

}  // namespace rectsub
