#include "sympl/errors.hpp"

namespace sympl {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NotSquare: return "NotSquare";
        case ErrorCode::NotSymmetric: return "NotSymmetric";
        case ErrorCode::NotSkewSymmetric: return "NotSkewSymmetric";
        case ErrorCode::NotSPSD: return "NotSPSD";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::OddDimensions: return "OddDimensions";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::IsotropicInput: return "IsotropicInput";
        case ErrorCode::RankDeficientInput: return "RankDeficientInput";
        case ErrorCode::IsotropicKernel: return "IsotropicKernel";
        case ErrorCode::MixedDegenerateKernel: return "MixedDegenerateKernel";
        case ErrorCode::KOutOfRange: return "KOutOfRange";
        case ErrorCode::TraceBoundViolated: return "TraceBoundViolated";
        case ErrorCode::UnsupportedHeader: return "UnsupportedHeader";
        case ErrorCode::MalformedEntry: return "MalformedEntry";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

bool is_mathematical_rejection(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NotSymmetric:
        case ErrorCode::NotSkewSymmetric:
        case ErrorCode::NotSPSD:
        case ErrorCode::NoConvergence:
        case ErrorCode::IsotropicInput:
        case ErrorCode::RankDeficientInput:
        case ErrorCode::IsotropicKernel:
        case ErrorCode::MixedDegenerateKernel:
        case ErrorCode::TraceBoundViolated:
            return true;
        default:
            return false;
    }
}

}  // namespace sympl
