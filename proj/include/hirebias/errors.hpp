#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hirebias {

// Base class for all failures raised by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Numeric or arity precondition violated (negative statistic, empty sample,
// zero variance, too few groups).
struct DomainError : Error {
    using Error::Error;
};

// Input value outside a feature's domain, or a malformed config document.
struct ValidationError : Error {
    using Error::Error;
};

// A 2x2 contingency table with an empty row or column margin.
struct DegenerateTableError : Error {
    using Error::Error;
};

// A test mode requested outside its size bound.
struct ModeError : Error {
    using Error::Error;
};

// Name selection could not produce k survivors.
struct InsufficientNamesError : Error {
    InsufficientNamesError(const std::string& what, std::size_t survivor_count)
        : Error(what), survivors(survivor_count) {}
    std::size_t survivors;
};

// Resume corpus or census file could not be ingested.
struct IngestError : Error {
    using Error::Error;
};

// Result store read/write failure; byte_offset is the last durable offset.
struct StoreError : Error {
    StoreError(const std::string& what, std::size_t offset)
        : Error(what), byte_offset(offset) {}
    std::size_t byte_offset;
};

// Endpoint unreachable after the transport retry budget.
struct TransportError : Error {
    using Error::Error;
};

// Content-filter refusal. Distinct from TransportError: the runner re-sends
// the identical prompt instead of backing off.
struct RefusalError : Error {
    using Error::Error;
};

// Replay provider has no stored response for a query id.
struct ReplayMissError : Error {
    using Error::Error;
};

// A perturbed experiment cell has no baseline counterpart.
struct PairingError : Error {
    using Error::Error;
};

// A rate differential against a zero baseline rate.
struct UndefinedBaselineError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

}  // namespace hirebias
