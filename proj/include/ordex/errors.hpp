#pragma once

#include <stdexcept>
#include <string>

namespace ordex {

// Error taxonomy shared across the library. The CLI maps ArgumentError to
// exit code 2 (usage) and everything else to exit code 1.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ArgumentError : Error {
    using Error::Error;
};

struct CapacityError : Error {
    using Error::Error;
};

struct NumericalError : Error {
    using Error::Error;
};

struct InsufficientData : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

// Malformed dataset content (bad cell, missing target column). Unlike
// ArgumentError this is a runtime failure, not a usage error.
struct DataError : Error {
    using Error::Error;
};

}  // namespace ordex
