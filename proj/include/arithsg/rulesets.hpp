#pragma once

#include <algorithm>
#include <charconv>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "arithsg/arith.hpp"
#include "arithsg/sieve.hpp"

namespace arithsg {

// How a ruleset turns its arithmetic base set into move options.
enum class OptionSemantics {
    singleton_move_to,   // move to one number from the base set
    singleton_subtract,  // the base set already holds the differences
    counting,            // exactly one option: the value of a counting function
    split_sum,           // options are disjunctive sums produced by splitting
    fullset_sum,         // single option: the disjunctive sum of the whole base set
    powerset_move_to,    // any nonempty subset of the base set, as a sum
    powerset_subtract,   // same, base heaps are already the differences
};

inline const char* semantics_name(OptionSemantics s) {
    switch (s) {
        case OptionSemantics::singleton_move_to: return "singleton move-to";
        case OptionSemantics::singleton_subtract: return "singleton subtract";
        case OptionSemantics::counting: return "counting";
        case OptionSemantics::split_sum: return "split sum";
        case OptionSemantics::fullset_sum: return "fullset sum";
        case OptionSemantics::powerset_move_to: return "powerset move-to";
        case OptionSemantics::powerset_subtract: return "powerset subtract";
    }
    return "?";
}

// One option of a split-sum game: `count` copies of `part` plus an optional
// extra heap `rest` (0 = absent), or an explicit multiset in `parts` when
// nonempty (factoring games).
struct SplitOption {
    heap_t part = 0;
    std::uint64_t count = 0;
    heap_t rest = 0;
    std::span<const heap_t> parts{};
};

using HeapSink = std::function<void(heap_t)>;
using SplitSink = std::function<void(const SplitOption&)>;

// Executable form of a ruleset: the arithmetic property feeding the option
// semantics. `base` enumerates heaps (targets for singleton/counting games,
// sum components for fullset games, the allowed set for powerset games);
// `splits` enumerates whole options for split-sum games.
struct RulesetDescriptor {
    std::string id;
    std::string summary;
    OptionSemantics semantics = OptionSemantics::singleton_move_to;
    heap_t domain_min = 1;
    std::vector<heap_t> subtraction_set;  // sub{...} only
    std::function<void(const FactorSieve&, heap_t, const HeapSink&)> base;
    std::function<void(const FactorSieve&, heap_t, const SplitSink&)> splits;

    bool in_domain(heap_t n) const { return n >= domain_min; }
    void require_domain(heap_t n) const {
        if (!in_domain(n))
            throw domain_error("heap " + std::to_string(n) + " outside domain of " + id +
                               " (minimum " + std::to_string(domain_min) + ")");
    }
};

// A move option that may be a disjunctive sum of heaps. Canonical form keeps
// the heaps sorted descending; equality is order-independent.
struct SumPosition {
    std::vector<heap_t> heaps;

    void canonicalize() { std::sort(heaps.begin(), heaps.end(), std::greater<>()); }
    bool operator==(const SumPosition& o) const { return heaps == o.heaps; }
};

// Canonical emission order: by decreasing largest heap, then lexicographic
// on the descending heap lists.
inline bool canonical_before(const SumPosition& a, const SumPosition& b) {
    return std::lexicographical_compare(b.heaps.begin(), b.heaps.end(), a.heaps.begin(),
                                        a.heaps.end());
}

// All multisets {a_1 <= ... <= a_k}, k >= 2, of integers >= 2 whose product
// is n. With coprime_components set, no two components may share a prime
// (each prime power goes whole into one component).
inline void multiplicative_partitions(heap_t n, bool coprime_components,
                                      const std::function<void(std::span<const heap_t>)>& emit) {
    if (n < 2) throw domain_error("multiplicative_partitions requires n >= 2");
    std::vector<heap_t> parts;
    auto rec = [&](auto&& self, heap_t rem, heap_t lo) -> void {
        for (heap_t d = lo; d * d <= rem; ++d) {
            if (rem % d != 0) continue;
            if (coprime_components) {
                bool ok = true;
                for (heap_t a : parts)
                    if (std::gcd(a, d) != 1) { ok = false; break; }
                if (!ok) continue;
            }
            parts.push_back(d);
            self(self, rem / d, d);
            parts.pop_back();
        }
        // close the partition with the final (largest) component
        if (!parts.empty() && rem >= lo) {
            if (coprime_components) {
                for (heap_t a : parts)
                    if (std::gcd(a, rem) != 1) return;
            }
            parts.push_back(rem);
            emit(std::span<const heap_t>(parts));
            parts.pop_back();
        }
    };
    rec(rec, n, 2);
}

namespace detail {

inline void proper_divisors(const FactorSieve& s, heap_t n, const HeapSink& put) {
    for (heap_t d : divisors(s, n))
        if (d < n) put(d);
}

inline void counting_option(heap_t n, heap_t target, heap_t domain_min, const HeapSink& put) {
    // fixed points and values below the domain are terminal, not self-loops
    if (target != n && target >= domain_min) put(target);
}

inline std::vector<RulesetDescriptor> build_registry() {
    using S = OptionSemantics;
    std::vector<RulesetDescriptor> r;
    auto add = [&](RulesetDescriptor d) { r.push_back(std::move(d)); };

    add({.id = "maliquot",
         .summary = "move to a proper divisor",
         .semantics = S::singleton_move_to,
         .domain_min = 1,
         .base = [](const FactorSieve& s, heap_t n, const HeapSink& put) {
             proper_divisors(s, n, put);
         }});
    add({.id = "saliquot",
         .summary = "subtract a divisor",
         .semantics = S::singleton_subtract,
         .domain_min = 0,
         .base = [](const FactorSieve& s, heap_t n, const HeapSink& put) {
             if (n == 0) return;
             for (heap_t d : divisors(s, n)) put(n - d);
         }});
    add({.id = "maliquant",
         .summary = "move to a non-divisor",
         .semantics = S::singleton_move_to,
         .domain_min = 0,
         .base = [](const FactorSieve&, heap_t n, const HeapSink& put) {
             if (n == 0) return;
             put(0);  // 0 divides nothing
             for (heap_t k = 1; k < n; ++k)
                 if (n % k != 0) put(k);
         }});
    add({.id = "saliquant",
         .summary = "subtract a non-divisor",
         .semantics = S::singleton_subtract,
         .domain_min = 0,
         .base = [](const FactorSieve&, heap_t n, const HeapSink& put) {
             for (heap_t d = 2; d <= n; ++d)
                 if (n % d != 0) put(n - d);
         }});
    add({.id = "totative",
         .summary = "move to a smaller coprime residue",
         .semantics = S::singleton_move_to,
         .domain_min = 1,
         .base = [](const FactorSieve&, heap_t n, const HeapSink& put) {
             for (heap_t k = 1; k < n; ++k)
                 if (std::gcd(k, n) == 1) put(k);
         }});
    add({.id = "nontotative",
         .summary = "move to a smaller non-coprime residue (0 always allowed)",
         .semantics = S::singleton_move_to,
         .domain_min = 0,
         .base = [](const FactorSieve&, heap_t n, const HeapSink& put) {
             if (n == 0) return;
             put(0);
             for (heap_t k = 2; k < n; ++k)
                 if (std::gcd(k, n) > 1) put(k);
         }});
    add({.id = "totient",
         .summary = "move to phi(n)",
         .semantics = S::counting,
         .domain_min = 1,
         .base = [](const FactorSieve& s, heap_t n, const HeapSink& put) {
             counting_option(n, totient(factorize(s, n)), 1, put);
         }});
    add({.id = "nontotient",
         .summary = "move to n - phi(n)",
         .semantics = S::counting,
         .domain_min = 1,
         .base = [](const FactorSieve& s, heap_t n, const HeapSink& put) {
             counting_option(n, n - totient(factorize(s, n)), 1, put);
         }});
    add({.id = "mtau",
         .summary = "move to the number of proper divisors",
         .semantics = S::counting,
         .domain_min = 1,
         .base = [](const FactorSieve& s, heap_t n, const HeapSink& put) {
             counting_option(n, tau_proper(factorize(s, n)), 1, put);
         }});
    add({.id = "stau",
         .summary = "subtract the number of divisors",
         .semantics = S::counting,
         .domain_min = 0,
         .base = [](const FactorSieve& s, heap_t n, const HeapSink& put) {
             if (n == 0) return;
             counting_option(n, n - tau(factorize(s, n)), 0, put);
         }});
    add({.id = "momega_big",
         .summary = "move to the number of prime factors (with multiplicity)",
         .semantics = S::counting,
         .domain_min = 1,
         .base = [](const FactorSieve& s, heap_t n, const HeapSink& put) {
             counting_option(n, big_omega(factorize(s, n)), 1, put);
         }});
    add({.id = "somega_big",
         .summary = "subtract the number of prime factors (with multiplicity)",
         .semantics = S::counting,
         .domain_min = 1,
         .base = [](const FactorSieve& s, heap_t n, const HeapSink& put) {
             counting_option(n, n - big_omega(factorize(s, n)), 1, put);
         }});
    add({.id = "momega",
         .summary = "move to the number of distinct prime factors",
         .semantics = S::counting,
         .domain_min = 1,
         .base = [](const FactorSieve& s, heap_t n, const HeapSink& put) {
             counting_option(n, small_omega(factorize(s, n)), 1, put);
         }});
    add({.id = "somega",
         .summary = "subtract the number of distinct prime factors",
         .semantics = S::counting,
         .domain_min = 1,
         .base = [](const FactorSieve& s, heap_t n, const HeapSink& put) {
             counting_option(n, n - small_omega(factorize(s, n)), 1, put);
         }});
    add({.id = "dividing",
         .summary = "split into m > 1 equal parts",
         .semantics = S::split_sum,
         .domain_min = 1,
         .splits = [](const FactorSieve& s, heap_t n, const SplitSink& put) {
             for (heap_t d : divisors(s, n))
                 if (d < n) put({.part = d, .count = n / d});
         }});
    add({.id = "divide-and-residue",
         .summary = "split into equal parts plus a smaller remainder",
         .semantics = S::split_sum,
         .domain_min = 1,
         .splits = [](const FactorSieve&, heap_t n, const SplitSink& put) {
             for (heap_t d = 1; d < n; ++d)
                 put({.part = d, .count = n / d, .rest = n % d});
         }});
    add({.id = "complement-grundy",
         .summary = "like divide-and-residue but with at least two equal parts",
         .semantics = S::split_sum,
         .domain_min = 1,
         .splits = [](const FactorSieve&, heap_t n, const SplitSink& put) {
             for (heap_t d = 1; d <= n / 2; ++d)
                 put({.part = d, .count = n / d, .rest = n % d});
         }});
    add({.id = "divide-throw-residue",
         .summary = "split into equal parts, discarding the remainder",
         .semantics = S::split_sum,
         .domain_min = 1,
         .splits = [](const FactorSieve&, heap_t n, const SplitSink& put) {
             for (heap_t d = 1; d < n; ++d)
                 put({.part = d, .count = n / d});
         }});
    add({.id = "residue-throw-divisor",
         .summary = "move to a remainder n mod d",
         .semantics = S::singleton_move_to,
         .domain_min = 0,
         .base = [](const FactorSieve&, heap_t n, const HeapSink& put) {
             for (heap_t d = 1; d < n; ++d) put(n % d);
         }});
    add({.id = "m-factoring",
         .summary = "split into a factorization with at least two components",
         .semantics = S::split_sum,
         .domain_min = 1,
         .splits = [](const FactorSieve&, heap_t n, const SplitSink& put) {
             if (n < 2) return;
             multiplicative_partitions(n, false, [&](std::span<const heap_t> parts) {
                 put({.parts = parts});
             });
         }});
    add({.id = "m-factoring-distinct",
         .summary = "factor into pairwise-coprime components",
         .semantics = S::split_sum,
         .domain_min = 1,
         .splits = [](const FactorSieve&, heap_t n, const SplitSink& put) {
             if (n < 2) return;
             multiplicative_partitions(n, true, [&](std::span<const heap_t> parts) {
                 put({.parts = parts});
             });
         }});
    add({.id = "s-factoring",
         .summary = "subtract each component of a factorization",
         .semantics = S::split_sum,
         .domain_min = 0,
         .splits = [](const FactorSieve&, heap_t n, const SplitSink& put) {
             if (n < 2) return;
             std::vector<heap_t> diff;
             multiplicative_partitions(n, false, [&](std::span<const heap_t> parts) {
                 diff.assign(parts.size(), 0);
                 for (std::size_t i = 0; i < parts.size(); ++i) diff[i] = n - parts[i];
                 put({.parts = std::span<const heap_t>(diff)});
             });
         }});
    add({.id = "fullset-maliquot",
         .summary = "move to the sum of all proper divisors at once",
         .semantics = S::fullset_sum,
         .domain_min = 1,
         .base = [](const FactorSieve& s, heap_t n, const HeapSink& put) {
             proper_divisors(s, n, put);
         }});
    add({.id = "fullset-totient",
         .summary = "move to the sum of all smaller coprime residues at once",
         .semantics = S::fullset_sum,
         .domain_min = 1,
         .base = [](const FactorSieve&, heap_t n, const HeapSink& put) {
             for (heap_t k = 1; k < n; ++k)
                 if (std::gcd(k, n) == 1) put(k);
         }});
    add({.id = "ps-maliquot",
         .summary = "move to any nonempty subset of the proper divisors",
         .semantics = S::powerset_move_to,
         .domain_min = 1,
         .base = [](const FactorSieve& s, heap_t n, const HeapSink& put) {
             proper_divisors(s, n, put);
         }});
    add({.id = "ps-saliquot",
         .summary = "subtract any nonempty subset of the divisors",
         .semantics = S::powerset_subtract,
         .domain_min = 0,
         .base = [](const FactorSieve& s, heap_t n, const HeapSink& put) {
             if (n == 0) return;
             for (heap_t d : divisors(s, n)) put(n - d);
         }});
    add({.id = "ps-maliquant",
         .summary = "move to any nonempty subset of the non-divisors",
         .semantics = S::powerset_move_to,
         .domain_min = 1,
         .base = [](const FactorSieve&, heap_t n, const HeapSink& put) {
             for (heap_t k = 1; k < n; ++k)
                 if (n % k != 0) put(k);
         }});
    add({.id = "ps-saliquant",
         .summary = "subtract any nonempty subset of the non-divisors",
         .semantics = S::powerset_subtract,
         .domain_min = 1,
         .base = [](const FactorSieve&, heap_t n, const HeapSink& put) {
             for (heap_t d = 2; d <= n; ++d)
                 if (n % d != 0) put(n - d);
         }});
    add({.id = "ps-totative",
         .summary = "move to any nonempty subset of the smaller coprime residues",
         .semantics = S::powerset_move_to,
         .domain_min = 1,
         .base = [](const FactorSieve&, heap_t n, const HeapSink& put) {
             for (heap_t k = 1; k < n; ++k)
                 if (std::gcd(k, n) == 1) put(k);
         }});
    add({.id = "ps-nontotative",
         .summary = "move to any nonempty subset of the smaller non-coprime residues",
         .semantics = S::powerset_move_to,
         .domain_min = 1,
         .base = [](const FactorSieve&, heap_t n, const HeapSink& put) {
             for (heap_t k = 2; k < n; ++k)
                 if (std::gcd(k, n) > 1) put(k);
         }});
    return r;
}

inline RulesetDescriptor make_subtraction(std::vector<heap_t> set, std::string id) {
    RulesetDescriptor d;
    d.id = std::move(id);
    d.summary = "subtract an element of the set, sink at heap 1";
    d.semantics = OptionSemantics::singleton_subtract;
    d.domain_min = 1;
    d.subtraction_set = std::move(set);
    d.base = [set = d.subtraction_set](const FactorSieve&, heap_t n, const HeapSink& put) {
        for (heap_t s : set)
            if (n > s && n - s >= 1) put(n - s);
    };
    return d;
}

// Parses "sub{s1,s2,...}" into a subtraction-game descriptor.
inline RulesetDescriptor parse_subtraction(std::string_view name) {
    std::string_view inner = name.substr(4);  // past "sub{"
    if (inner.empty() || inner.back() != '}')
        throw lookup_error("malformed subtraction set in '" + std::string(name) + "'");
    inner.remove_suffix(1);
    std::vector<heap_t> set;
    std::size_t pos = 0;
    while (pos < inner.size()) {
        std::size_t comma = inner.find(',', pos);
        std::string_view tok = inner.substr(pos, comma == std::string_view::npos ? comma : comma - pos);
        heap_t v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc{} || ptr != tok.data() + tok.size() || v == 0)
            throw lookup_error("bad subtraction amount '" + std::string(tok) + "' in '" +
                               std::string(name) + "'");
        set.push_back(v);
        pos = comma == std::string_view::npos ? inner.size() : comma + 1;
    }
    if (set.empty()) throw lookup_error("empty subtraction set in '" + std::string(name) + "'");
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    std::string id = "sub{";
    for (std::size_t i = 0; i < set.size(); ++i)
        id += (i ? "," : "") + std::to_string(set[i]);
    id += "}";
    return make_subtraction(std::move(set), std::move(id));
}

}  // namespace detail

// The fixed rulesets; sub{...} descriptors are created on lookup. The entry
// listed as "sub{S}" is the parametric placeholder.
inline const std::vector<RulesetDescriptor>& registry() {
    static const std::vector<RulesetDescriptor> reg = [] {
        auto r = detail::build_registry();
        auto sub = detail::make_subtraction({}, "sub{S}");
        sub.base = nullptr;  // placeholder; lookup() instantiates real sets
        r.push_back(std::move(sub));
        return r;
    }();
    return reg;
}

inline RulesetDescriptor lookup(std::string_view name) {
    if (name.rfind("sub{", 0) == 0) return detail::parse_subtraction(name);
    for (const auto& d : registry())
        if (d.id == name) return d;
    std::string names;
    for (const auto& d : registry()) names += (names.empty() ? "" : ", ") + d.id;
    throw lookup_error("unknown ruleset '" + std::string(name) + "'; valid names: " + names);
}

// Base heaps whose nonempty subsets form the options of a powerset game.
// For the subtract flavor the heaps are already the differences.
inline std::vector<heap_t> allowed_set(const FactorSieve& sieve, const RulesetDescriptor& rs,
                                       heap_t n) {
    if (rs.semantics != OptionSemantics::powerset_move_to &&
        rs.semantics != OptionSemantics::powerset_subtract)
        throw usage_error("allowed_set requires a powerset ruleset, got " + rs.id);
    rs.require_domain(n);
    std::vector<heap_t> out;
    rs.base(sieve, n, [&](heap_t h) { out.push_back(h); });
    return out;
}

// All options of heap n, deduplicated, in canonical order. Powerset games
// enumerate explicit subsets only up to subset_cap allowed heaps.
inline std::vector<SumPosition> options(const FactorSieve& sieve, const RulesetDescriptor& rs,
                                        heap_t n, std::size_t subset_cap = 20) {
    rs.require_domain(n);
    std::vector<SumPosition> out;
    switch (rs.semantics) {
        case OptionSemantics::singleton_move_to:
        case OptionSemantics::singleton_subtract:
        case OptionSemantics::counting:
            rs.base(sieve, n, [&](heap_t h) { out.push_back({{h}}); });
            break;
        case OptionSemantics::fullset_sum: {
            SumPosition sum;
            rs.base(sieve, n, [&](heap_t h) { sum.heaps.push_back(h); });
            if (!sum.heaps.empty()) out.push_back(std::move(sum));
            break;
        }
        case OptionSemantics::split_sum:
            rs.splits(sieve, n, [&](const SplitOption& o) {
                SumPosition p;
                if (!o.parts.empty()) {
                    p.heaps.assign(o.parts.begin(), o.parts.end());
                } else {
                    p.heaps.assign(o.count, o.part);
                    if (o.rest != 0) p.heaps.push_back(o.rest);
                }
                out.push_back(std::move(p));
            });
            break;
        case OptionSemantics::powerset_move_to:
        case OptionSemantics::powerset_subtract: {
            std::vector<heap_t> allowed = allowed_set(sieve, rs, n);
            if (allowed.size() > subset_cap)
                throw oracle_refusal("powerset option enumeration for " + rs.id + " at heap " +
                                     std::to_string(n) + " needs 2^" +
                                     std::to_string(allowed.size()) + " subsets (cap " +
                                     std::to_string(subset_cap) + ")");
            for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << allowed.size()); ++mask) {
                SumPosition p;
                for (std::size_t i = 0; i < allowed.size(); ++i)
                    if (mask >> i & 1) p.heaps.push_back(allowed[i]);
                out.push_back(std::move(p));
            }
            break;
        }
    }
    for (auto& p : out) p.canonicalize();
    std::sort(out.begin(), out.end(), canonical_before);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline bool is_terminal(const FactorSieve& sieve, const RulesetDescriptor& rs, heap_t n) {
    rs.require_domain(n);
    bool any = false;
    if (rs.semantics == OptionSemantics::split_sum)
        rs.splits(sieve, n, [&](const SplitOption&) { any = true; });
    else
        rs.base(sieve, n, [&](heap_t) { any = true; });
    return !any;
}

}  // namespace arithsg
