#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sn {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Operands live on charts of different dimension, or an index is out of range.
struct DimensionError : Error {
    explicit DimensionError(const std::string& msg) : Error(msg) {}
};

// An operation received a value of the wrong homogeneous degree.
struct DegreeError : Error {
    explicit DegreeError(const std::string& msg) : Error(msg) {}
};

// Expression-language syntax error; `position` is a 1-based character offset.
struct ParseError : Error {
    ParseError(std::size_t position, const std::string& msg)
        : Error(msg + " at position " + std::to_string(position)), position(position) {}
    std::size_t position;
};

// Expression-language type error (variance mix, non-scalar power, ...).
struct TypeError : Error {
    TypeError(std::size_t position, const std::string& msg)
        : Error(msg + " at position " + std::to_string(position)), position(position) {}
    std::size_t position;
};

// The two bracket formulations disagreed; signals an implementation bug.
struct MethodDisagreement : Error {
    explicit MethodDisagreement(const std::string& msg) : Error(msg) {}
};

}  // namespace sn
