#pragma once

#include <stdexcept>
#include <string>

namespace xtalk {

// Error hierarchy. The CLI maps categories to exit codes:
// ConfigError -> 2, ValidationError (and descendants) -> 3, IoError -> 4.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

struct ValidationError : Error {
    using Error::Error;
};

// topology
struct UnsupportedSize : ValidationError {
    using ValidationError::ValidationError;
};
struct ParseError : ValidationError {
    using ValidationError::ValidationError;
};
struct IndexOutOfRange : ValidationError {
    using ValidationError::ValidationError;
};

// router
struct SameQubit : ValidationError {
    using ValidationError::ValidationError;
};
struct LayoutIncomplete : ValidationError {
    using ValidationError::ValidationError;
};

// circuits
struct InvalidBitstring : ValidationError {
    using ValidationError::ValidationError;
};
struct ZeroShift : ValidationError {
    using ValidationError::ValidationError;
};
struct EmptyShift : ValidationError {
    using ValidationError::ValidationError;
};
struct InvalidSize : ValidationError {
    using ValidationError::ValidationError;
};
struct OverlapError : ValidationError {
    using ValidationError::ValidationError;
};
struct DeviceOverflow : ValidationError {
    using ValidationError::ValidationError;
};

// noise
struct InconsistentRouting : ValidationError {
    using ValidationError::ValidationError;
};
struct TooManyQubits : ValidationError {
    using ValidationError::ValidationError;
};
struct LengthMismatch : ValidationError {
    using ValidationError::ValidationError;
};
struct MissingQubit : ValidationError {
    using ValidationError::ValidationError;
};

// active attack
struct OutOfRange : ValidationError {
    using ValidationError::ValidationError;
};
struct FootprintConflict : ValidationError {
    using ValidationError::ValidationError;
};
struct NotAnEdge : ValidationError {
    using ValidationError::ValidationError;
};

// passive attack
struct ShapeMismatch : ValidationError {
    using ValidationError::ValidationError;
};
struct UnknownTrueLabel : ValidationError {
    using ValidationError::ValidationError;
};
struct DatasetTooSmall : ValidationError {
    using ValidationError::ValidationError;
};
struct KOutOfRange : ValidationError {
    using ValidationError::ValidationError;
};
struct SizeOverflow : ValidationError {
    using ValidationError::ValidationError;
};

}  // namespace xtalk
