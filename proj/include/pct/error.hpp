#pragma once

#include <stdexcept>
#include <string>

namespace pct {

// Base of all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad argument values: sizes, ranges, roles, capacities.
struct InvalidArgument : Error {
    using Error::Error;
};

// Tensor/grid/layer dimension mismatches.
struct ShapeError : Error {
    using Error::Error;
};

// Malformed or inconsistent binary payloads.
struct IoError : Error {
    using Error::Error;
};

// Non-finite values produced where finite ones are required.
struct NumericError : Error {
    using Error::Error;
};

// Text-format errors carrying a 1-based line number (0 = unknown).
struct ParseError : Error {
    int line = 0;
    ParseError(const std::string& msg, int line_number)
        : Error(line_number > 0 ? "line " + std::to_string(line_number) + ": " + msg : msg),
          line(line_number) {}
};

}  // namespace pct
