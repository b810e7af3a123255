#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace voxbrick {

/// Base class for every error this library raises on bad input.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Grid shapes that cannot be combined or reduced (odd sides, mismatched dims).
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Semantically invalid input (missing colors, empty palette, bad config values).
class InputError : public Error {
public:
    using Error::Error;
};

/// Degenerate geometry, e.g. a mesh with zero total surface area.
class GeometryError : public Error {
public:
    using Error::Error;
};

/// Filesystem problems; the message names the offending path.
class IoError : public Error {
public:
    using Error::Error;
};

/// A library invariant failed. Maps to exit code 3 in the CLI.
class InternalError : public Error {
public:
    using Error::Error;
};

/// Malformed text input. Carries the 1-based line number of the defect.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

} // namespace voxbrick
