#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace morphfit {

/// Raised for every recoverable failure in the library (bad input, I/O, degenerate data).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when an input file cannot be opened. The CLI maps this to exit status 2.
class InputError : public Error {
public:
    using Error::Error;
};

/// Non-fatal diagnostics collected by loaders and `fit`.
using Warnings = std::vector<std::string>;

}  // namespace morphfit
