#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jumploci {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text; carries the offending location.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::string location)
        : Error(what + " at " + location), location_(std::move(location)) {}
    const std::string& location() const { return location_; }

private:
    std::string location_;
};

/// A well-formed request the library declines to answer (the CLI maps this
/// to exit status 2).
class Refusal : public Error {
public:
    using Error::Error;
};

/// Arguments violate an operation's precondition.
class DomainError : public Error {
public:
    using Error::Error;
};

}  // namespace jumploci
