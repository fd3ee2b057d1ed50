#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mimoic {

class NumericsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NonHermitian : public NumericsError {
public:
    using NumericsError::NumericsError;
};

class NonFinite : public NumericsError {
public:
    using NumericsError::NumericsError;
};

class NotPositiveDefinite : public NumericsError {
public:
    using NumericsError::NumericsError;
};

class DimensionMismatch : public NumericsError {
public:
    using NumericsError::NumericsError;
};

// A beamformer direction is undefined because the channel it is built from
// vanishes (e.g. zero direct gain).
class DegenerateDirection : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidConfig : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class PreconditionViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class ValidationError : public std::runtime_error {
public:
    ValidationError(std::string field, const std::string& what)
        : std::runtime_error(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

} // namespace mimoic
