#ifndef CPREC_ERRORS_HPP
#define CPREC_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cprec {

/// Base type for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// File-level failures: unreadable, malformed or truncated inputs.
class IoError : public Error {
public:
    using Error::Error;
};

/// Violations of an operation's preconditions on otherwise valid data.
class DomainError : public Error {
public:
    using Error::Error;
};

class EmptyImageError : public DomainError {
public:
    using DomainError::DomainError;
};

class ParseError : public IoError {
public:
    ParseError(const std::string& what, std::size_t byte_offset)
        : IoError(what + " (byte offset " + std::to_string(byte_offset) + ")"),
          byte_offset_(byte_offset) {}
    std::size_t byte_offset() const { return byte_offset_; }

private:
    std::size_t byte_offset_;
};

class DimensionMismatchError : public IoError {
public:
    using IoError::IoError;
};

class BadMagicError : public IoError {
public:
    using IoError::IoError;
};

class CountMismatchError : public IoError {
public:
    using IoError::IoError;
};

class TruncatedFileError : public IoError {
public:
    using IoError::IoError;
};

class MissingFileError : public IoError {
public:
    using IoError::IoError;
};

class BadCellCountError : public DomainError {
public:
    using DomainError::DomainError;
};

class ImageTooSmallError : public DomainError {
public:
    using DomainError::DomainError;
};

class BadGridError : public DomainError {
public:
    using DomainError::DomainError;
};

class LengthMismatchError : public DomainError {
public:
    using DomainError::DomainError;
};

class EmptyTrainingSetError : public DomainError {
public:
    using DomainError::DomainError;
};

class EmptyBatchError : public DomainError {
public:
    using DomainError::DomainError;
};

class BadConfigError : public DomainError {
public:
    using DomainError::DomainError;
};

class TooFewSamplesError : public DomainError {
public:
    using DomainError::DomainError;
};

} // namespace cprec

#endif // CPREC_ERRORS_HPP
