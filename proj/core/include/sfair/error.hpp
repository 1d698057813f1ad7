#pragma once

#include <stdexcept>
#include <string>

namespace sfair {

// Base for every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An argument violates an operation's precondition (negative distance,
// weight vector not summing to one, month outside 1..12, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// No cost rate is configured for a carrier or country.
class MissingRate : public Error {
public:
    using Error::Error;
};

// Lookup of an unknown city id.
class NotFound : public Error {
public:
    using Error::Error;
};

// Malformed input file content. Carries the file and 1-based line.
class ParseError : public Error {
public:
    ParseError(std::string file, std::size_t line, const std::string& message)
        : Error(file + ":" + std::to_string(line) + ": " + message),
          file_(std::move(file)), line_(line), message_(message) {}

    const std::string& file() const noexcept { return file_; }
    std::size_t line() const noexcept { return line_; }
    const std::string& message() const noexcept { return message_; }

private:
    std::string file_;
    std::size_t line_;
    std::string message_;
};

}  // namespace sfair
