#pragma once

#include <stdexcept>
#include <string>

namespace flavorrec {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& message) : std::runtime_error(message) {}
};

/// Input bytes could not be parsed under the expected schema.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& message) : Error(message) {}
};

/// Input parsed but violates a domain invariant (range, uniqueness, unknown id).
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& message) : Error(message) {}
};

/// A flavour formula was asked to divide by a zero active nutrient weight.
class DegenerateInputError : public Error {
public:
    explicit DegenerateInputError(const std::string& message) : Error(message) {}
};

/// Bad configuration or hyperparameters.
class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& message) : Error(message) {}
};

/// Lookup of a user or item that the model/index does not know.
class NotFound : public Error {
public:
    explicit NotFound(const std::string& message) : Error(message) {}
};

/// Content methods need at least one rating from the user.
class ColdStartError : public Error {
public:
    explicit ColdStartError(const std::string& message) : Error(message) {}
};

}  // namespace flavorrec
