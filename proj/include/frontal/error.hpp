#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace frontal {

// Base of every error thrown by the library. The CLI maps the three families
// below onto its exit codes (config = 1, math = 2, io = 3).
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Numerical or geometric failure: domain errors, violated preconditions
// (inflection in range, undetermined tangent line, coarse grid).
class MathError : public Error
{
public:
    using Error::Error;
};

class DomainError : public MathError
{
public:
    using MathError::MathError;
};

class PreconditionError : public MathError
{
public:
    using MathError::MathError;
};

// Malformed user input: expression syntax, config files, CLI values.
class ConfigError : public Error
{
public:
    using Error::Error;
};

class ParseError : public ConfigError
{
public:
    ParseError(std::string const& message, std::size_t offset)
        : ConfigError(message + " at offset " + std::to_string(offset)), offset_(offset)
    {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class IoError : public Error
{
public:
    using Error::Error;
};

} // namespace frontal
