#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace minsurf {

// Stable error codes. The CLI prints these names verbatim, so never rename one.
enum class ErrorCode {
    ZeroPolynomial,
    NonConvergence,
    OnZeroSection,
    AtChartOrigin,
    DegenerateMatrix,
    MalformedInput,
    NonConstantLeading,
    DegreeBoundViolated,
    DegenerateBranch,
    ContourTooLarge,
    InsufficientCoefficients,
    NearBranchPoint,
    StepCollapse,
    PoleOnPath,
    ToleranceNotMet,
    DisconnectedDomain,
    NotSimpleRoot,
    InconsistentCensus,
    UnknownName,
    InvalidParams,
    IoError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace minsurf
