#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dlsml {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text. Carries the 1-based line number of the offending row.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Well-formed input that violates a data-model invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Caller passed an argument outside an operation's domain.
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// An over filter selected nothing.
class EmptySelectionError : public Error {
public:
    using Error::Error;
};

/// A failing percentage whose denominator row is zero.
class UndefinedScoreError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace dlsml
