#pragma once

#include <stdexcept>
#include <string>

namespace mpgemm {

/// Base class for all mpgemm errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Matrix or fragment dimensions do not satisfy an operation's contract.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// Batched operands have unequal list lengths.
class LengthMismatch : public Error {
public:
    using Error::Error;
};

/// A fragment was passed in the wrong role (e.g. an accumulator where a
/// matrix_a operand is required).
class RoleMismatch : public Error {
public:
    using Error::Error;
};

/// A value left the representable range (rounded to infinity) where the
/// operation requires a finite result.
class RangeOverflow : public Error {
public:
    using Error::Error;
};

/// An aggregate operation received no input.
class EmptyInput : public Error {
public:
    using Error::Error;
};

/// An experiment configuration requests an impossible combination.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Underlying file could not be opened, read or written.
class IoError : public Error {
public:
    using Error::Error;
};

/// A matrix file has a bad magic, version, dtype or inconsistent size.
class FormatError : public Error {
public:
    using Error::Error;
};

/// A matrix file ends before its declared payload.
class TruncatedFile : public FormatError {
public:
    using FormatError::FormatError;
};

} // namespace mpgemm
