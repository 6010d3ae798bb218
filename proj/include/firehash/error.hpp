#pragma once

#include <stdexcept>
#include <string>

namespace firehash {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller-supplied parameter violates an operation's precondition.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Input data is malformed (non-numeric cell, NaN, shape mismatch, ...).
class DataError : public Error {
public:
    using Error::Error;
};

/// File could not be opened, read or written.
class IoError : public Error {
public:
    using Error::Error;
};

/// Serialized model has the wrong magic/version, is truncated, or fails its checksum.
class FormatError : public Error {
public:
    using Error::Error;
};

class VersionError : public FormatError {
public:
    using FormatError::FormatError;
};

class ChecksumError : public FormatError {
public:
    using FormatError::FormatError;
};

}  // namespace firehash
