#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace orbitdepth {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed text input; position is a 0-based character offset.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t pos)
        : Error(what + " at position " + std::to_string(pos)), pos_(pos) {}
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

/// Violated precondition (bad level, zero input, dependent data, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A numeric identity check did not hold; carries both sides in the message.
class CheckFailure : public Error {
public:
    using Error::Error;
};

class BranchTrackingError : public Error {
public:
    using Error::Error;
};

class QuadratureError : public Error {
public:
    using Error::Error;
};

class OdeError : public Error {
public:
    using Error::Error;
};

} // namespace orbitdepth
