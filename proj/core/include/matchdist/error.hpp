#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace matchdist {

enum class ErrorCode {
    ParseError,
    InvalidSimplex,
    DuplicateSimplex,
    MissingFace,
    MonotonicityViolation,
    EmptyCriticalSet,
    NonFiniteCoordinate,
    MissingVertexValue,
    DegenerateBox,
    InvalidLevel,
    DimensionMismatch,
    InvalidConfig,
    InfeasibleSpec,
    DepthTooLarge,
    EmptyDataset,
    IoError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (notably the CLI) can map it without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what)
{
    throw Error(code, what);
}

}  // namespace matchdist
