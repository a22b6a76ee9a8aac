#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace arithsg {

// Heap sizes and most arithmetic run in exact unsigned 64-bit; nim-values
// are stored as 32-bit with an explicit guard against overflow.
using heap_t = std::uint64_t;
using nim_t = std::uint32_t;

// An input lies outside an operation's domain.
struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A request exceeds the configured memory budget.
struct capacity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A ruleset name did not resolve against the registry.
struct lookup_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An API was called on a ruleset of the wrong kind.
struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The brute-force oracle refuses rather than approximate: the position would
// require enumerating more subsets than the caller's cap allows.
struct oracle_refusal : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A nim-value table could not be completed; carries the last heap size whose
// value was computed before the failure.
struct partial_table_error : std::runtime_error {
    heap_t last_completed;
    partial_table_error(const std::string& msg, heap_t last)
        : std::runtime_error(msg), last_completed(last) {}
};

// A position expression failed to parse; offset is the byte position of the
// offending token.
struct parse_error : std::runtime_error {
    std::size_t offset;
    parse_error(const std::string& msg, std::size_t off)
        : std::runtime_error(msg + " (at byte " + std::to_string(off) + ")"), offset(off) {}
};

}  // namespace arithsg
