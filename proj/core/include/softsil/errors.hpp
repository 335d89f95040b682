#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace softsil {

/// Invalid user-supplied configuration (bad spec text, out-of-range parameter,
/// unsupported combination). The CLI maps this to exit code 1.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A renderer that cannot provide gradients (Heaviside occupancy) was asked to.
class NonDifferentiableError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

/// Numerical failure at run time: non-convergence, singular projection,
/// non-finite values. The CLI maps this to exit code 2.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file. Carries the 1-based line number of the offending record.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace softsil
