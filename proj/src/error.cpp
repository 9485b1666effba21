#include "dgs/error.hpp"

namespace dgs {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::NodeOutOfRange: return "NodeOutOfRange";
        case ErrorCode::SelfLoop: return "SelfLoop";
        case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
        case ErrorCode::DuplicateEdge: return "DuplicateEdge";
        case ErrorCode::SinkNode: return "SinkNode";
        case ErrorCode::NotCoReachable: return "NotCoReachable";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::SizeLimitExceeded: return "SizeLimitExceeded";
        case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
        case ErrorCode::DegenerateSpectrum: return "DegenerateSpectrum";
        case ErrorCode::InvalidRegime: return "InvalidRegime";
        case ErrorCode::ConstantSignal: return "ConstantSignal";
        case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

}  // namespace dgs
