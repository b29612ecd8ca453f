#include "minsurf/error.hpp"

namespace minsurf {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::OnZeroSection: return "OnZeroSection";
    case ErrorCode::AtChartOrigin: return "AtChartOrigin";
    case ErrorCode::DegenerateMatrix: return "DegenerateMatrix";
    case ErrorCode::MalformedInput: return "MalformedInput";
    case ErrorCode::NonConstantLeading: return "NonConstantLeading";
    case ErrorCode::DegreeBoundViolated: return "DegreeBoundViolated";
    case ErrorCode::DegenerateBranch: return "DegenerateBranch";
    case ErrorCode::ContourTooLarge: return "ContourTooLarge";
    case ErrorCode::InsufficientCoefficients: return "InsufficientCoefficients";
    case ErrorCode::NearBranchPoint: return "NearBranchPoint";
    case ErrorCode::StepCollapse: return "StepCollapse";
    case ErrorCode::PoleOnPath: return "PoleOnPath";
    case ErrorCode::ToleranceNotMet: return "ToleranceNotMet";
    case ErrorCode::DisconnectedDomain: return "DisconnectedDomain";
    case ErrorCode::NotSimpleRoot: return "NotSimpleRoot";
    case ErrorCode::InconsistentCensus: return "InconsistentCensus";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace minsurf
