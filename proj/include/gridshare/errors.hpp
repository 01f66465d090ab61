#pragma once

#include <stdexcept>
#include <string>

namespace gridshare {

/// Base of every error the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A configuration value or precondition is invalid. The CLI maps this family to exit code 1.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Scenario document field failed validation; `path()` is the dotted location, e.g. "lte.crs_ports".
class ValidationError : public ConfigError {
public:
    ValidationError(std::string path, const std::string& what)
        : ConfigError(path + ": " + what), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

/// Scenario document is not well-formed JSON.
class ParseError : public ConfigError {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : ConfigError("parse error at line " + std::to_string(line) + ", column " +
                      std::to_string(column) + ": " + what),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Index outside the grid, or an empty/inverted range.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Overlay hit a cell that already carries a label.
class ConflictError : public Error {
public:
    using Error::Error;
};

/// A footprint could not be placed in the available downlink cells.
class PlacementError : public Error {
public:
    using Error::Error;
};

/// A 6G occasion would be visible to 5G devices (collides with a 5G structure).
class NotHiddenError : public PlacementError {
public:
    using PlacementError::PlacementError;
};

/// Unknown name in a lookup (report row, label, command).
class LookupError : public Error {
public:
    using Error::Error;
};

}  // namespace gridshare
