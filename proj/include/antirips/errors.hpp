#pragma once

#include <stdexcept>
#include <string>

namespace antirips {

enum class ErrorKind {
    NonSymmetric,
    NegativeEntry,
    TriangleViolation,
    ZeroSimilarity,
    MethodDimensionMismatch,
    EmptySubset,
    SizeLimitExceeded,
    DisconnectedGraph,
    DimCapTooLow,
    InvalidFiltrationOrder,
    MetricMismatch,
    NotPartialPlan,
    NotAntipodalSupport,
    SpreadTooSmall,
    TooManySupportPoints,
    NoValidBipartition,
    ZeroBarycenter,
    DegenerateDirection,
    NotANet,
    AmbiguousLiftStep,
    PartialColoring,
    NoAmbient,
    PartialMap,
    InvalidArgument,
    ParseError,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

// Threshold comparisons against a scale r use the closed >= convention with
// this much slack, so that floating geodesics that should sit exactly at r
// (e.g. equilateral triples at 2pi/3) are kept.
inline constexpr double kScaleTol = 1e-12;

inline bool at_least(double d, double r) { return d >= r - kScaleTol; }

}  // namespace antirips
