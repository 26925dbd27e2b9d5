#pragma once

#include <stdexcept>
#include <string>

namespace wregret {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input text: bad rational syntax, missing JSON keys, unknown labels.
struct ParseError : Error {
    using Error::Error;
};

// A well-formed request that violates a precondition or invariant
// (masses not summing to 1, impossible observation, mixed state spaces...).
struct DomainError : Error {
    using Error::Error;
};

// Enumeration bounds that would exceed the configured work limit.
struct ResourceError : DomainError {
    using DomainError::DomainError;
};

} // namespace wregret
