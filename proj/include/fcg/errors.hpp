#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fcg {

// Root of every error the library throws. Construction and precondition
// failures derive from InvalidArgument; evaluation failures from the rest.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

// A reward falls outside the utility (or eta) domain, e.g. it breaches the
// wealth floor.
class DomainError : public Error {
public:
    using Error::Error;
};

// A utility value lies outside the image of u, so u^{-1} is undefined there.
class ImageError : public Error {
public:
    using Error::Error;
};

class MissingArgument : public Error {
public:
    using Error::Error;
};

class UnknownState : public Error {
public:
    using Error::Error;
};

class SpaceMismatch : public Error {
public:
    using Error::Error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class NumericalInstability : public Error {
public:
    NumericalInstability(const std::string& what, std::string dump)
        : Error(what), dump_(std::move(dump)) {}

    // Plain-text tableau dump of the offending problem.
    [[nodiscard]] const std::string& dump() const noexcept { return dump_; }

private:
    std::string dump_;
};

class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line), column_(column) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

} // namespace fcg
