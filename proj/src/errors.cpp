#include "antirips/errors.hpp"

namespace antirips {

const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NonSymmetric: return "NonSymmetric";
        case ErrorKind::NegativeEntry: return "NegativeEntry";
        case ErrorKind::TriangleViolation: return "TriangleViolation";
        case ErrorKind::ZeroSimilarity: return "ZeroSimilarity";
        case ErrorKind::MethodDimensionMismatch: return "MethodDimensionMismatch";
        case ErrorKind::EmptySubset: return "EmptySubset";
        case ErrorKind::SizeLimitExceeded: return "SizeLimitExceeded";
        case ErrorKind::DisconnectedGraph: return "DisconnectedGraph";
        case ErrorKind::DimCapTooLow: return "DimCapTooLow";
        case ErrorKind::InvalidFiltrationOrder: return "InvalidFiltrationOrder";
        case ErrorKind::MetricMismatch: return "MetricMismatch";
        case ErrorKind::NotPartialPlan: return "NotPartialPlan";
        case ErrorKind::NotAntipodalSupport: return "NotAntipodalSupport";
        case ErrorKind::SpreadTooSmall: return "SpreadTooSmall";
        case ErrorKind::TooManySupportPoints: return "TooManySupportPoints";
        case ErrorKind::NoValidBipartition: return "NoValidBipartition";
        case ErrorKind::ZeroBarycenter: return "ZeroBarycenter";
        case ErrorKind::DegenerateDirection: return "DegenerateDirection";
        case ErrorKind::NotANet: return "NotANet";
        case ErrorKind::AmbiguousLiftStep: return "AmbiguousLiftStep";
        case ErrorKind::PartialColoring: return "PartialColoring";
        case ErrorKind::NoAmbient: return "NoAmbient";
        case ErrorKind::PartialMap: return "PartialMap";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "UnknownError";
}

}  // namespace antirips
