#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "arithsg/engine.hpp"

namespace arithsg {

// How much of a ruleset's nim-value sequence the formulas below cover.
enum class Coverage { full, partial, none };

// A closed-form nim-value. Deep powerset games grow as powers of two beyond
// any word size, so those are carried as exponent records.
struct FormulaValue {
    bool pow2 = false;
    std::uint64_t value = 0;     // when !pow2
    std::uint64_t exponent = 0;  // when pow2: the value is 2^exponent

    static FormulaValue plain(std::uint64_t v) { return {false, v, 0}; }
    static FormulaValue power_of_two(std::uint64_t e) { return {true, 0, e}; }

    bool fits_u64() const { return !pow2 || exponent < 64; }
    std::uint64_t as_u64() const {
        if (!fits_u64())
            throw capacity_error("nim-value 2^" + std::to_string(exponent) +
                                 " does not fit in 64 bits");
        return pow2 ? std::uint64_t(1) << exponent : value;
    }
    bool equals(std::uint64_t v) const { return fits_u64() && as_u64() == v; }
    std::string str() const {
        return pow2 && exponent >= 64 ? "2^" + std::to_string(exponent)
                                      : std::to_string(as_u64());
    }
};

inline Coverage coverage(std::string_view ruleset_id) {
    static const char* full[] = {
        "maliquot",      "saliquot",      "maliquant",        "totative",
        "totient",       "dividing",      "divide-throw-residue",
        "residue-throw-divisor",          "m-factoring",      "m-factoring-distinct",
        "fullset-maliquot",               "ps-saliquot",      "ps-maliquant",
        "ps-totative",
    };
    static const char* partial[] = {
        "saliquant", "nontotative", "mtau", "momega_big", "momega",
        "complement-grundy", "nontotient",
    };
    for (const char* s : full)
        if (ruleset_id == s) return Coverage::full;
    for (const char* s : partial)
        if (ruleset_id == s) return Coverage::partial;
    return Coverage::none;
}

// Number of iterations of n -> n - phi(n) until an even prime power p^(2j)
// is reached (1 = p^0 counts). Returns nothing if the budget runs out.
inline std::optional<heap_t> nontotient_dist(const FactorSieve& sieve, heap_t n,
                                             heap_t budget = 100000) {
    if (n == 0) throw domain_error("nontotient_dist(0)");
    heap_t steps = 0;
    while (steps <= budget) {
        Factorization f = factorize(sieve, n);
        if (n == 1 || (f.pairs.size() == 1 && f.pairs[0].second % 2 == 0))
            return steps;
        n -= totient(f);
        ++steps;
    }
    return std::nullopt;
}

// Closed-form evaluators, one per fully solved ruleset. Holds the memoized
// prime classes used by the totient formula.
class Formulas {
public:
    explicit Formulas(const FactorSieve& sieve) : sieve_(&sieve), classes_(sieve) {}

    std::optional<FormulaValue> value(const RulesetDescriptor& rs, heap_t n) {
        rs.require_domain(n);
        const FactorSieve& s = *sieve_;
        const std::string& id = rs.id;
        if (id == "maliquot") return FormulaValue::plain(big_omega(factorize(s, n)));
        if (id == "saliquot")
            return FormulaValue::plain(n == 0 ? 0 : two_valuation(n) + std::uint64_t(1));
        if (id == "maliquant") return FormulaValue::plain(n == 0 ? 0 : odd_index(n));
        if (id == "totative")
            return FormulaValue::plain(n == 1 ? 0 : smallest_prime_index(s, n));
        if (id == "totient")
            return FormulaValue::plain(n == 1 ? 0 : (classes_.of(n) + 1) % 2);
        if (id == "dividing") return FormulaValue::plain(omega_two(factorize(s, n)));
        if (id == "divide-throw-residue")
            return FormulaValue::plain(n == 1 ? 0 : odd_index(n));
        if (id == "residue-throw-divisor") {
            if (n <= 1) return FormulaValue::plain(0);
            // value k on the block [3*2^(k-1) - 1, 3*2^k - 2]
            std::uint64_t k = 1;
            while (n > 3 * ((std::uint64_t(1) << k) - 1) + 1) ++k;
            return FormulaValue::plain(k);
        }
        if (id == "m-factoring")
            return FormulaValue::plain(n == 1 ? 0 : big_omega(factorize(s, n)) - 1);
        if (id == "m-factoring-distinct")
            return FormulaValue::plain(n == 1 ? 0 : small_omega(factorize(s, n)) - 1);
        if (id == "fullset-maliquot")
            return FormulaValue::plain(n > 1 && is_squarefree(factorize(s, n)) ? 1 : 0);
        if (id == "ps-saliquot") {
            if (n == 0) return FormulaValue::plain(0);
            return FormulaValue::power_of_two(two_valuation(n));
        }
        if (id == "ps-maliquant") {
            static constexpr nim_t first[9] = {0, 0, 0, 1, 0, 2, 1, 4, 8};
            heap_t m = n;
            while (m > 8 && m % 2 == 0) m /= 2;  // even heaps copy their halves
            if (m <= 8) return FormulaValue::plain(first[m]);
            return FormulaValue::power_of_two((m - 1) / 2);
        }
        if (id == "ps-totative") {
            if (n == 1) return FormulaValue::plain(0);
            return FormulaValue::power_of_two(smallest_prime_index(s, n) - 1);
        }
        return std::nullopt;
    }

    // Closed-form table; values must fit the 32-bit entry type.
    SGTable table(const RulesetDescriptor& rs, heap_t N) {
        if (coverage(rs.id) != Coverage::full)
            throw usage_error("no full closed form for " + rs.id);
        SGTable t;
        t.ruleset = rs.id;
        t.domain_min = rs.domain_min;
        t.limit = N;
        t.values.assign(static_cast<std::size_t>(N) + 1, 0);
        t.provenance.assign(static_cast<std::size_t>(N) + 1, SGTable::Source::closed_form);
        for (heap_t n = rs.domain_min; n <= N; ++n) {
            FormulaValue v = *value(rs, n);
            if (!v.fits_u64() || v.as_u64() >= nim_value_cap)
                throw partial_table_error("closed-form value for " + rs.id + " at heap " +
                                              std::to_string(n) + " exceeds 2^31",
                                          n == rs.domain_min ? rs.domain_min : n - 1);
            t.values[n] = static_cast<nim_t>(v.as_u64());
        }
        return t;
    }

private:
    const FactorSieve* sieve_;
    ShapiroClasses classes_;
};

// Closed-form table when fully solved, engine recursion otherwise.
inline SGTable make_table(const FactorSieve& sieve, const RulesetDescriptor& rs, heap_t N,
                          bool prefer_closed_form = true) {
    if (prefer_closed_form && coverage(rs.id) == Coverage::full) {
        Formulas f(sieve);
        return f.table(rs, N);
    }
    return sg_table(sieve, rs, N);
}

struct ClaimResult {
    bool pass = true;
    std::optional<heap_t> counterexample;
    std::string detail;
};

// A decidable statement about a nim-value table. Hard claims are proved in
// the source material and asserted; soft ones are conjectures or observed
// patterns and only reported.
struct Claim {
    std::string ruleset;
    std::string name;
    std::string statement;
    bool hard = true;
    heap_t valid_to = 0;  // exclusive bound; 0 = whole table
    std::function<ClaimResult(const FactorSieve&, const SGTable&)> check;
};

namespace detail {

inline ClaimResult scan(const SGTable& t, heap_t lo, heap_t hi_excl,
                        const std::function<bool(heap_t)>& ok,
                        const std::function<std::string(heap_t)>& describe) {
    ClaimResult r;
    heap_t hi = hi_excl == 0 ? t.limit + 1 : std::min(hi_excl, t.limit + 1);
    for (heap_t n = std::max(lo, t.domain_min); n < hi; ++n) {
        if (!ok(n)) {
            r.pass = false;
            r.counterexample = n;
            r.detail = describe(n);
            return r;
        }
    }
    return r;
}

// n = p_i * p_j for primes of ranks i and j = i + gap; returns i or 0.
inline heap_t prime_pair_rank(const FactorSieve& s, heap_t n, heap_t gap) {
    Factorization f = factorize(s, n);
    if (f.pairs.size() != 2 || f.pairs[0].second != 1 || f.pairs[1].second != 1) return 0;
    heap_t i = s.prime_index(f.pairs[0].first);
    heap_t j = s.prime_index(f.pairs[1].first);
    return j == i + gap ? i : 0;
}

}  // namespace detail

inline std::vector<Claim> partial_claims(std::string_view ruleset_id) {
    std::vector<Claim> out;
    auto add = [&](Claim c) { out.push_back(std::move(c)); };
    const std::string id(ruleset_id);

    if (id == "saliquant") {
        add({id, "odd-heaps", "value of an odd heap n is (n-1)/2", true, 0,
             [](const FactorSieve&, const SGTable& t) {
                 return detail::scan(t, 1, 0,
                                     [&](heap_t n) { return n % 2 == 0 || t.values[n] == (n - 1) / 2; },
                                     [&](heap_t n) {
                                         return "value " + std::to_string(t.values[n]) +
                                                " != " + std::to_string((n - 1) / 2);
                                     });
             }});
        add({id, "upper-bound", "value is below n/2 for n >= 1", true, 0,
             [](const FactorSieve&, const SGTable& t) {
                 return detail::scan(t, 1, 0,
                                     [&](heap_t n) { return 2 * std::uint64_t(t.values[n]) < n; },
                                     [&](heap_t n) {
                                         return "value " + std::to_string(t.values[n]) +
                                                " not below n/2";
                                     });
             }});
        add({id, "lower-bound", "conjecture: value is at least (n-2)/4", false, 0,
             [](const FactorSieve&, const SGTable& t) {
                 return detail::scan(t, 0, 0,
                                     [&](heap_t n) { return 4 * std::uint64_t(t.values[n]) + 2 >= n; },
                                     [&](heap_t n) {
                                         return "value " + std::to_string(t.values[n]) +
                                                " below (n-2)/4";
                                     });
             }});
    } else if (id == "nontotative") {
        // n = 1 is terminal-adjacent with value 1 and sits outside the
        // characterizations, so the scans start at 2.
        add({id, "value-1-at-primes", "value 1 exactly at primes (n >= 2)", true, 0,
             [](const FactorSieve& s, const SGTable& t) {
                 return detail::scan(t, 2, 0,
                                     [&](heap_t n) { return (t.values[n] == 1) == s.is_prime(n); },
                                     [&](heap_t n) { return "value " + std::to_string(t.values[n]); });
             }});
        add({id, "value-2-at-prime-squares", "value 2 exactly at prime squares", true, 0,
             [](const FactorSieve& s, const SGTable& t) {
                 return detail::scan(t, 2, 0,
                                     [&](heap_t n) {
                                         Factorization f = factorize(s, n);
                                         bool psq = f.pairs.size() == 1 && f.pairs[0].second == 2;
                                         return (t.values[n] == 2) == psq;
                                     },
                                     [&](heap_t n) { return "value " + std::to_string(t.values[n]); });
             }});
        add({id, "values-3-4", "values {3,4} exactly at consecutive-prime products and 8;"
                               " 3 when the lower rank is odd", true, 0,
             [](const FactorSieve& s, const SGTable& t) {
                 return detail::scan(t, 2, 0,
                                     [&](heap_t n) {
                                         heap_t i = detail::prime_pair_rank(s, n, 1);
                                         bool in34 = t.values[n] == 3 || t.values[n] == 4;
                                         if (in34 != (i != 0 || n == 8)) return false;
                                         if (i != 0 && (t.values[n] == 3) != (i % 2 == 1)) return false;
                                         return true;
                                     },
                                     [&](heap_t n) { return "value " + std::to_string(t.values[n]); });
             }});
        add({id, "values-5-6", "values {5,6} exactly at rank-gap-2 prime products and 12;"
                               " 5 when the lower rank is 1 or 2 mod 4", true, 0,
             [](const FactorSieve& s, const SGTable& t) {
                 return detail::scan(t, 2, 0,
                                     [&](heap_t n) {
                                         heap_t i = detail::prime_pair_rank(s, n, 2);
                                         bool in56 = t.values[n] == 5 || t.values[n] == 6;
                                         if (in56 != (i != 0 || n == 12)) return false;
                                         if (i != 0 && (t.values[n] == 5) != (i % 4 == 1 || i % 4 == 2))
                                             return false;
                                         return true;
                                     },
                                     [&](heap_t n) { return "value " + std::to_string(t.values[n]); });
             }});
        add({id, "even-heaps", "value of 2n is n", true, 0,
             [](const FactorSieve&, const SGTable& t) {
                 return detail::scan(t, 2, 0,
                                     [&](heap_t n) { return n % 2 == 1 || t.values[n] == n / 2; },
                                     [&](heap_t n) { return "value " + std::to_string(t.values[n]); });
             }});
        add({id, "3-mod-6", "n = 3 mod 6 has value floor((n+1)/4)", true, 0,
             [](const FactorSieve&, const SGTable& t) {
                 return detail::scan(t, 2, 0,
                                     [&](heap_t n) {
                                         return n % 6 != 3 || t.values[n] == (n + 1) / 4;
                                     },
                                     [&](heap_t n) { return "value " + std::to_string(t.values[n]); });
             }});
        add({id, "5-25-mod-30", "n = 5 or 25 mod 30 has value floor(n/10) or ceil(n/10)", true, 0,
             [](const FactorSieve&, const SGTable& t) {
                 return detail::scan(t, 2, 0,
                                     [&](heap_t n) {
                                         if (n % 30 != 5 && n % 30 != 25) return true;
                                         return t.values[n] == n / 10 || t.values[n] == (n + 9) / 10;
                                     },
                                     [&](heap_t n) { return "value " + std::to_string(t.values[n]); });
             }});
        add({id, "half-bound", "value never exceeds n/2", true, 0,
             [](const FactorSieve&, const SGTable& t) {
                 return detail::scan(t, 2, 0,
                                     [&](heap_t n) { return 2 * std::uint64_t(t.values[n]) <= n; },
                                     [&](heap_t n) { return "value " + std::to_string(t.values[n]); });
             }});
        add({id, "odd-quarter-bound", "odd heaps stay at or below (n+1)/4", true, 0,
             [](const FactorSieve&, const SGTable& t) {
                 return detail::scan(t, 2, 0,
                                     [&](heap_t n) {
                                         return n % 2 == 0 || 4 * std::uint64_t(t.values[n]) <= n + 1;
                                     },
                                     [&](heap_t n) { return "value " + std::to_string(t.values[n]); });
             }});
    } else if (id == "mtau") {
        add({id, "ones-at-nonprime-tau", "value 1 exactly when the proper-divisor count is"
                                         " nonprime (2 <= n < 46656)", true, 46656,
             [](const FactorSieve& s, const SGTable& t) {
                 return detail::scan(t, 2, 46656,
                                     [&](heap_t n) {
                                         bool nonprime = !s.is_prime(tau_proper(factorize(s, n)));
                                         return (t.values[n] == 1) == nonprime;
                                     },
                                     [&](heap_t n) {
                                         return "tau'(n)=" +
                                                std::to_string(tau_proper(factorize(s, n))) +
                                                ", value " + std::to_string(t.values[n]);
                                     });
             }});
    } else if (id == "momega_big") {
        add({id, "ones-at-nonprime-omega", "value 1 exactly when the prime-factor count is"
                                           " nonprime (2 <= n < 65536)", true, 65536,
             [](const FactorSieve& s, const SGTable& t) {
                 return detail::scan(t, 2, 65536,
                                     [&](heap_t n) {
                                         bool nonprime = !s.is_prime(big_omega(factorize(s, n)));
                                         return (t.values[n] == 1) == nonprime;
                                     },
                                     [&](heap_t n) {
                                         return "Omega(n)=" +
                                                std::to_string(big_omega(factorize(s, n))) +
                                                ", value " + std::to_string(t.values[n]);
                                     });
             }});
    } else if (id == "momega") {
        add({id, "ones-at-single-prime", "value 1 exactly at prime powers (n < 5040)", true, 5040,
             [](const FactorSieve& s, const SGTable& t) {
                 return detail::scan(t, 1, 5040,
                                     [&](heap_t n) {
                                         bool single = small_omega(factorize(s, n)) == 1;
                                         return (t.values[n] == 1) == single;
                                     },
                                     [&](heap_t n) { return "value " + std::to_string(t.values[n]); });
             }});
    } else if (id == "complement-grundy") {
        add({id, "absent-values", "values 12, 15 and 20 never occur", false, 0,
             [](const FactorSieve&, const SGTable& t) {
                 ClaimResult r;
                 for (heap_t n = t.domain_min; n <= t.limit; ++n) {
                     nim_t v = t.values[n];
                     if (v == 12 || v == 15 || v == 20) {
                         r.pass = false;
                         r.counterexample = n;
                         r.detail = "value " + std::to_string(v) + " occurs at " + std::to_string(n);
                         return r;
                     }
                 }
                 return r;
             }});
    } else if (id == "divide-throw-residue") {
        add({id, "matches-maliquant", "agrees with the maliquant engine values for n >= 2",
             true, 0,
             [](const FactorSieve& s, const SGTable& t) {
                 SGTable m = sg_table(s, lookup("maliquant"), t.limit);
                 return detail::scan(t, 2, 0,
                                     [&](heap_t n) { return t.values[n] == m.values[n]; },
                                     [&](heap_t n) {
                                         return std::to_string(t.values[n]) + " vs maliquant " +
                                                std::to_string(m.values[n]);
                                     });
             }});
    } else if (id == "nontotient") {
        add({id, "dist-parity", "observed pattern: value equals dist mod 2", false, 0,
             [](const FactorSieve& s, const SGTable& t) {
                 return detail::scan(t, 1, 0,
                                     [&](heap_t n) {
                                         auto d = nontotient_dist(s, n);
                                         return d && t.values[n] == *d % 2;
                                     },
                                     [&](heap_t n) {
                                         auto d = nontotient_dist(s, n);
                                         return "dist=" + (d ? std::to_string(*d) : "?") +
                                                ", value " + std::to_string(t.values[n]);
                                     });
             }});
    }
    return out;
}

}  // namespace arithsg
