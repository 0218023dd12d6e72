#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qseries {

/// A requested coefficient window extends past what a series actually knows.
class PrecisionError : public std::runtime_error {
public:
    PrecisionError(std::string msg, std::int64_t required, std::int64_t available)
        : std::runtime_error(std::move(msg)), required_(required), available_(available) {}

    std::int64_t required() const { return required_; }
    std::int64_t available() const { return available_; }

private:
    std::int64_t required_;
    std::int64_t available_;
};

/// A computation would allocate more coefficients than the configured cap.
class BudgetError : public std::runtime_error {
public:
    BudgetError(std::string msg, std::int64_t required, std::int64_t budget)
        : std::runtime_error(std::move(msg)), required_(required), budget_(budget) {}

    std::int64_t required() const { return required_; }
    std::int64_t budget() const { return budget_; }

private:
    std::int64_t required_;
    std::int64_t budget_;
};

/// Invalid argument at the mathematical level (zero-series inversion,
/// residue out of range, t < 2, ...).
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Inversion of a series whose window shows no nonzero coefficient. Kept
/// distinct from other domain errors because the expansion driver can often
/// fix it by widening the working window.
class InvertError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Syntax error with a 1-based source position.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, int line, int column)
        : std::runtime_error(msg + " at line " + std::to_string(line) + ", column " +
                             std::to_string(column)),
          line_(line), column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// Structural error in a catalog file; carries the offending record id when known.
class CatalogError : public std::runtime_error {
public:
    explicit CatalogError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace qseries
