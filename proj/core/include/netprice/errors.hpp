#pragma once

#include <stdexcept>
#include <string>

namespace netprice {

/// Base class for all toolkit errors. The CLI maps these to exit code 2.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& message) : std::runtime_error(message) {}
};

/// Unreadable or unwritable file.
class IoError : public Error {
public:
    using Error::Error;
};

/// Structural problem in a table or spec: duplicate columns, missing
/// columns, conflicting column kinds, width mismatches between files.
class SchemaError : public Error {
public:
    using Error::Error;
};

/// A malformed data row; carries the 1-based line number in the source file.
class RowError : public Error {
public:
    RowError(const std::string& message, std::size_t line)
        : Error(message + " (line " + std::to_string(line) + ")"), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Invalid configuration: run spec, column spec, or hyperparameter values.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A transform or estimator cannot be fit on the given data.
class FitError : public Error {
public:
    using Error::Error;
};

/// Mismatched vector/matrix dimensions at predict or scoring time.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// A train/test or inner split would leave a partition empty.
class SplitError : public Error {
public:
    using Error::Error;
};

/// Cross-validation fold assignment is impossible (k > n rows, k < 2).
class FoldError : public Error {
public:
    using Error::Error;
};

/// Malformed hyperparameter grid (e.g. an empty candidate list).
class GridError : public Error {
public:
    using Error::Error;
};

/// Every benchmark cell failed, or a report holds no successful rows.
/// The CLI maps this one to exit code 3.
class NoRowsError : public Error {
public:
    using Error::Error;
};

} // namespace netprice
