#pragma once

#include <stdexcept>

namespace tfnca {

// Root of the library's failure modes. Everything thrown on bad input
// derives from this; anything else escaping the library is a bug.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Zero, negative or overflow-scale grid/image dimensions, or two grids
// that were required to agree in shape and do not.
struct DimensionError : Error {
    using Error::Error;
};

// Cell access outside the lattice where no boundary handling applies.
struct IndexError : Error {
    using Error::Error;
};

// Anything wrong with a rule number or rule text.
struct RuleError : Error {
    using Error::Error;
};
struct RuleRangeError : RuleError {
    using RuleError::RuleError;
};
struct RuleParseError : RuleError {
    using RuleError::RuleError;
};
struct InvalidBasicError : RuleError {
    using RuleError::RuleError;
};

// Malformed PNM payloads.
struct FormatError : Error {
    using Error::Error;
};
// Payload ends before the header-promised pixel count.
struct TruncationError : FormatError {
    using FormatError::FormatError;
};

// File system trouble: unreadable input, unwritable output.
struct IoError : Error {
    using Error::Error;
};

// API misuse: wrong image class for an operation, empty corpus,
// out-of-range parameters.
struct UsageError : Error {
    using Error::Error;
};

}  // namespace tfnca
