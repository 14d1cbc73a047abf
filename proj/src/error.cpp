#include "demcal/error.hpp"

namespace demcal {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidInput: return "invalid-input";
        case ErrorCode::DomainOverflow: return "domain-overflow";
        case ErrorCode::Timeout: return "timeout";
        case ErrorCode::EmptyExperiment: return "empty-experiment";
        case ErrorCode::DegeneratePile: return "degenerate-pile";
        case ErrorCode::NoSlide: return "no-slide";
        case ErrorCode::Geometry: return "geometry";
        case ErrorCode::InvalidVolume: return "invalid-volume";
        case ErrorCode::DegenerateData: return "degenerate-data";
        case ErrorCode::DegenerateDesign: return "degenerate-design";
        case ErrorCode::UnsupportedSize: return "unsupported-size";
        case ErrorCode::CannotTest: return "cannot-test";
        case ErrorCode::NoSolution: return "no-solution";
        case ErrorCode::AmbiguousSolution: return "ambiguous-solution";
        case ErrorCode::PressUndefined: return "press-undefined";
        case ErrorCode::InvalidPlan: return "invalid-plan";
        case ErrorCode::StageFailure: return "stage-failure";
    }
    return "unknown";
}

}  // namespace demcal
