#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sympl {

enum class ErrorCode {
    NotSquare,
    NotSymmetric,
    NotSkewSymmetric,
    NotSPSD,
    NoConvergence,
    OddDimensions,
    ShapeMismatch,
    InvalidArgument,
    IsotropicInput,
    RankDeficientInput,
    IsotropicKernel,
    MixedDegenerateKernel,
    KOutOfRange,
    TraceBoundViolated,
    UnsupportedHeader,
    MalformedEntry,
    DimensionMismatch,
    IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// True for errors that reject the input on mathematical grounds (as opposed
/// to malformed files, bad shapes or usage mistakes).
bool is_mathematical_rejection(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace sympl
