#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "arithsg/rulesets.hpp"

namespace arithsg {

// Nim-values must stay below 2^31; larger values (deep powerset games) are
// handled by the closed-form evaluators in exponent form instead.
inline constexpr std::uint64_t nim_value_cap = std::uint64_t(1) << 31;

// Least nonnegative integer absent from the set.
inline nim_t mex(std::span<const nim_t> values) {
    std::vector<bool> seen(values.size() + 1, false);
    for (nim_t v : values)
        if (v < seen.size()) seen[v] = true;
    nim_t m = 0;
    while (seen[m]) ++m;
    return m;
}

inline nim_t mex(const std::vector<nim_t>& values) {
    return mex(std::span<const nim_t>(values));
}

// GF(2) row-echelon basis of nim-values. Tracks whether some nonempty subset
// XORs to zero (a zero insert or a linearly dependent one).
class XorBasis {
public:
    void insert(std::uint64_t v) {
        while (v != 0) {
            int b = 63 - std::countl_zero(v);
            if (rows_[b] == 0) {
                rows_[b] = v;
                return;
            }
            v ^= rows_[b];
        }
        zero_reachable_ = true;
    }

    bool spans(std::uint64_t v) const {
        while (v != 0) {
            int b = 63 - std::countl_zero(v);
            if (rows_[b] == 0) return false;
            v ^= rows_[b];
        }
        return true;
    }

    bool zero_reachable() const { return zero_reachable_; }

    // mex over { XOR of S : S a nonempty subset of the inserted values }.
    // The reachable set is span(basis), minus 0 unless zero_reachable; the
    // mex of a GF(2) span is always a power of two, so ascending membership
    // tests over 2^j suffice.
    std::uint64_t mex() const {
        if (!zero_reachable_) return 0;
        for (int j = 0; j < 63; ++j)
            if (!spans(std::uint64_t(1) << j)) return std::uint64_t(1) << j;
        return std::uint64_t(1) << 63;
    }

private:
    std::array<std::uint64_t, 64> rows_{};
    bool zero_reachable_ = false;
};

inline std::uint64_t xor_span_mex(std::span<const nim_t> component_values) {
    XorBasis basis;
    for (nim_t v : component_values) basis.insert(v);
    return basis.mex();
}

// Per-ruleset array of nim-values with per-entry provenance.
struct SGTable {
    enum class Source : std::uint8_t { engine, closed_form };

    std::string ruleset;
    heap_t domain_min = 1;
    heap_t limit = 0;
    std::vector<nim_t> values;      // indexed by heap size, 0..limit
    std::vector<Source> provenance;

    nim_t at(heap_t n) const {
        if (n < domain_min || n > limit)
            throw capacity_error("heap " + std::to_string(n) + " outside table for " + ruleset +
                                 " (limit " + std::to_string(limit) + "); extend the table");
        return values[n];
    }
};

// Bottom-up memoized mex recursion over the ruleset's options. Option values
// of disjunctive sums are XORs of component values; powerset games use the
// GF(2) span shortcut instead of subset enumeration.
inline SGTable sg_table(const FactorSieve& sieve, const RulesetDescriptor& rs, heap_t N) {
    if (N < rs.domain_min)
        throw domain_error("table limit " + std::to_string(N) + " below domain of " + rs.id);
    if (N > sieve.limit())
        throw capacity_error("table limit " + std::to_string(N) + " exceeds sieve limit " +
                             std::to_string(sieve.limit()));
    SGTable t;
    t.ruleset = rs.id;
    t.domain_min = rs.domain_min;
    t.limit = N;
    t.values.assign(static_cast<std::size_t>(N) + 1, 0);
    t.provenance.assign(static_cast<std::size_t>(N) + 1, SGTable::Source::engine);

    const bool powerset = rs.semantics == OptionSemantics::powerset_move_to ||
                          rs.semantics == OptionSemantics::powerset_subtract;
    // version-stamped scratch avoids clearing between heaps
    std::vector<std::uint32_t> stamp(static_cast<std::size_t>(N) + 2, 0);
    std::uint32_t tick = 0;

    for (heap_t n = rs.domain_min; n <= N; ++n) {
        std::uint64_t value = 0;
        if (powerset) {
            XorBasis basis;
            rs.base(sieve, n, [&](heap_t h) { basis.insert(t.values[h]); });
            value = basis.mex();
        } else {
            ++tick;
            auto mark = [&](std::uint64_t v) {
                if (v < stamp.size()) stamp[v] = tick;
            };
            switch (rs.semantics) {
                case OptionSemantics::singleton_move_to:
                case OptionSemantics::singleton_subtract:
                case OptionSemantics::counting:
                    rs.base(sieve, n, [&](heap_t h) { mark(t.values[h]); });
                    break;
                case OptionSemantics::fullset_sum: {
                    std::uint64_t acc = 0;
                    bool any = false;
                    rs.base(sieve, n, [&](heap_t h) {
                        acc ^= t.values[h];
                        any = true;
                    });
                    if (any) mark(acc);
                    break;
                }
                case OptionSemantics::split_sum:
                    rs.splits(sieve, n, [&](const SplitOption& o) {
                        std::uint64_t x = 0;
                        if (!o.parts.empty()) {
                            for (heap_t h : o.parts) x ^= t.values[h];
                        } else {
                            if (o.count & 1) x ^= t.values[o.part];
                            if (o.rest != 0) x ^= t.values[o.rest];
                        }
                        mark(x);
                    });
                    break;
                default: break;
            }
            std::uint64_t m = 0;
            while (m < stamp.size() && stamp[m] == tick) ++m;
            value = m;
        }
        if (value >= nim_value_cap)
            throw partial_table_error("nim-value for " + rs.id + " at heap " + std::to_string(n) +
                                          " reaches 2^31; table stops",
                                      n == rs.domain_min ? rs.domain_min : n - 1);
        t.values[n] = static_cast<nim_t>(value);
    }
    return t;
}

// Independent verification oracle: direct top-down recursion over options(),
// with explicit subset enumeration for powerset games (capped). No code is
// shared with sg_table beyond the option generators.
class BruteForceOracle {
public:
    BruteForceOracle(const FactorSieve& sieve, RulesetDescriptor rs, std::size_t subset_cap = 20)
        : sieve_(&sieve), rs_(std::move(rs)), subset_cap_(subset_cap) {}

    nim_t sg(heap_t n) {
        rs_.require_domain(n);
        auto it = memo_.find(n);
        if (it != memo_.end()) return it->second;
        std::vector<nim_t> vals;
        for (const SumPosition& opt : options(*sieve_, rs_, n, subset_cap_)) {
            std::uint64_t x = 0;
            for (heap_t h : opt.heaps) x ^= sg(h);
            vals.push_back(static_cast<nim_t>(x));
        }
        nim_t v = mex(vals);
        memo_.emplace(n, v);
        return v;
    }

private:
    const FactorSieve* sieve_;
    RulesetDescriptor rs_;
    std::size_t subset_cap_;
    std::unordered_map<heap_t, nim_t> memo_;
};

// A mixed-ruleset disjunctive sum: one (ruleset, heap) pair per component.
struct PositionComponent {
    std::string ruleset;
    heap_t heap = 0;
    bool operator==(const PositionComponent&) const = default;
};

struct Position {
    std::vector<PositionComponent> components;
    bool empty() const { return components.empty(); }
};

// A move: replace one component's heap by a SumPosition within its ruleset.
struct Move {
    std::size_t component = 0;
    SumPosition to;
};

using TableMap = std::map<std::string, SGTable>;

// Nim-value of the sum: XOR of component values.
inline std::uint64_t sum_value(const Position& pos, const TableMap& tables) {
    std::uint64_t x = 0;
    for (const auto& c : pos.components) {
        auto it = tables.find(c.ruleset);
        if (it == tables.end())
            throw capacity_error("no table for ruleset " + c.ruleset);
        x ^= it->second.at(c.heap);
    }
    return x;
}

// All moves to a zero position, in component order then canonical option
// order; empty exactly when the position is a P-position or terminal. With
// first_only, stops at the first winning move.
inline std::vector<Move> winning_moves(const FactorSieve& sieve, const Position& pos,
                                       const TableMap& tables, bool first_only = false,
                                       std::size_t subset_cap = 20) {
    std::uint64_t total = sum_value(pos, tables);
    std::vector<Move> out;
    if (total == 0) return out;
    for (std::size_t j = 0; j < pos.components.size(); ++j) {
        const auto& comp = pos.components[j];
        const SGTable& table = tables.at(comp.ruleset);
        std::uint64_t target = total ^ table.at(comp.heap);
        RulesetDescriptor rs = lookup(comp.ruleset);
        for (SumPosition& opt : options(sieve, rs, comp.heap, subset_cap)) {
            std::uint64_t x = 0;
            for (heap_t h : opt.heaps) x ^= table.at(h);
            if (x == target) {
                out.push_back({j, std::move(opt)});
                if (first_only) return out;
            }
        }
    }
    return out;
}

}  // namespace arithsg
