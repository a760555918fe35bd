#pragma once

#include <stdexcept>
#include <string>

namespace trilap {

/// Classified failure modes surfaced by the library. The kind is stable API;
/// the message carries the offending simplex or value.
enum class ErrorKind {
    LoopEdge,
    MissingEdgeForFace,
    DegenerateFace,
    NonPositiveWeight,
    InconsistentWeight,
    DisconnectedComplex,
    UnknownVertex,
    UnknownEdge,
    UnknownFace,
    UnknownSimplex,
    ComplexMismatch,
    SupportNotFinite,
    DepthExceeded,
    PartitionViolation,
    OffspringNotRepresentable,
    SummabilityFails,
    NoInteriorSimplices,
    DimensionTooLarge,
    SchemaError,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail)
        : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace trilap
