#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace drfan {

enum class ErrorKind {
    InvalidGraph,
    UnknownVertex,
    UnknownEdge,
    MissingHalfEdge,
    AmbientMismatch,
    UnsupportedDimension,
    DimensionTooLarge,
    BoundTooLarge,
    BoxTooSmall,
    ParseError,
    ValidationError,
};

inline std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::InvalidGraph: return "InvalidGraph";
    case ErrorKind::UnknownVertex: return "UnknownVertex";
    case ErrorKind::UnknownEdge: return "UnknownEdge";
    case ErrorKind::MissingHalfEdge: return "MissingHalfEdge";
    case ErrorKind::AmbientMismatch: return "AmbientMismatch";
    case ErrorKind::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorKind::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorKind::BoundTooLarge: return "BoundTooLarge";
    case ErrorKind::BoxTooSmall: return "BoxTooSmall";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    }
    return "Unknown";
}

/// The single exception type thrown by the library. `kind` identifies the
/// failure; `detail` carries the offending id, JSON path or invariant name.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string detail)
        : std::runtime_error(std::string(to_string(kind)) + ": " + detail)
        , kind_(kind)
        , detail_(std::move(detail))
    {
    }

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::string detail_;
};

} // namespace drfan
