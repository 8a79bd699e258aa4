#pragma once

#include <stdexcept>
#include <string>

namespace cartan {

/// Syntax error in coefficient or matrix text. `pos` is a byte offset into the input.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string msg, std::size_t pos)
        : std::runtime_error(std::move(msg) + " (at position " + std::to_string(pos) + ")"),
          pos(pos) {}
    std::size_t pos;
};

/// Mathematically invalid input: singular matrix, wrong determinant, form not preserved, ...
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A truncated computation could not be resolved at the precision carried.
/// `required` is the absolute t-adic precision that would have sufficed, when known.
class PrecisionError : public std::runtime_error {
public:
    explicit PrecisionError(std::string msg, long long required = -1)
        : std::runtime_error(std::move(msg)), required(required) {}
    long long required;
};

} // namespace cartan
