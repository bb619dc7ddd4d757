#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace coopmsr {

// Bad arguments or domain violations.
struct NotPrimeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct FieldMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DivisionByZeroError : std::domain_error {
    using std::domain_error::domain_error;
};

// Repair pattern the requested code cannot serve.
struct UnsupportedPatternError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Problem size exceeds an exact-checking resource guard.
struct GuardLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularSystemError : std::runtime_error {
    SingularSystemError(const std::string& what, std::size_t rank_found)
        : std::runtime_error(what), rank(rank_found) {}
    std::size_t rank;
};

// Input data does not lie on the code (corrupt or mismatched shards).
struct InconsistentDataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Violated internal invariant; indicates a bug, not a usage error.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace coopmsr
