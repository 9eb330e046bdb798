#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pioneer {

// Argument outside the mathematical domain of an operation (alpha <= 0, x < 1, p outside (0,1), ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Posterior or history too thin for the requested quantity.
class InsufficientData : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Caller broke an API precondition (missing carry-over weights, t = 0 for a lagged quantity, ...).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& what)
        : std::runtime_error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

// CSV ingestion failure; row and column are 1-based file coordinates.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t row, std::size_t column, const std::string& what)
        : std::runtime_error("row " + std::to_string(row) + ", column " + std::to_string(column) + ": " + what),
          row_(row), column_(column) {}

    std::size_t row() const noexcept { return row_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t row_;
    std::size_t column_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace pioneer
