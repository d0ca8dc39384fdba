#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tessiso {

enum class ErrorCode {
    ParseError,
    MalformedRotation,
    NonSimple,
    Disconnected,
    NonPositiveLength,
    InconsistentFrontier,
    DisconnectedSelection,
    FrontierContact,
    IndeterminateFaces,
    EmptyFrontierFreeRegion,
    NotFiniteTessellation,
    NotStarLikeComplete,
    BudgetExceeded,
    NotApplicable,
    NonPositiveEllMin,
    OutOfRange,
    NegativeCurvatureParams,
    RadiusTooSmall,
    ParamTooSmall,
    TruncationTooShallow,
    MissingAnalysis,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace tessiso
