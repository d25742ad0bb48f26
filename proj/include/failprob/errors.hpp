#pragma once

#include <stdexcept>
#include <string>

namespace failprob {

// Linear-algebra or optimization breakdown (non-SPD matrices past the jitter
// cap, degenerate fits). CLI maps this to exit code 4.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Failure of an external black-box evaluation. CLI maps this to exit code 3.
struct OracleError : std::runtime_error {
    explicit OracleError(const std::string& what) : std::runtime_error(what) {}
};

// Bad configuration or malformed input file. CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace failprob
