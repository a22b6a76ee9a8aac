#pragma once

#include <bit>
#include <cstdint>
#include <unordered_map>

#include "arithsg/sieve.hpp"

namespace arithsg {

// Number of prime factors counted with multiplicity.
inline std::uint64_t big_omega(const Factorization& f) {
    std::uint64_t s = 0;
    for (const auto& [p, e] : f.pairs) s += e;
    return s;
}

// Number of distinct prime factors.
inline std::uint64_t small_omega(const Factorization& f) { return f.pairs.size(); }

// Number of divisors.
inline std::uint64_t tau(const Factorization& f) {
    std::uint64_t t = 1;
    for (const auto& [p, e] : f.pairs) t *= e + 1;
    return t;
}

// Number of proper divisors (tau - 1; zero for n == 1).
inline std::uint64_t tau_proper(const Factorization& f) { return tau(f) - 1; }

// Euler phi via multiplicativity.
inline heap_t totient(const Factorization& f) {
    heap_t r = f.n;
    for (const auto& [p, e] : f.pairs) r = r / p * (p - 1);
    return r;
}

inline bool is_squarefree(const Factorization& f) {
    for (const auto& [p, e] : f.pairs)
        if (e > 1) return false;
    return true;
}

// Largest k with 2^k | n.
inline std::uint32_t two_valuation(heap_t n) {
    if (n == 0) throw domain_error("two_valuation(0)");
    return static_cast<std::uint32_t>(std::countr_zero(n));
}

// Index of the largest odd divisor: if n = 2^k (2m-1) then the result is m.
inline heap_t odd_index(heap_t n) {
    if (n == 0) throw domain_error("odd_index(0)");
    n >>= std::countr_zero(n);
    return (n + 1) / 2;
}

// Index of the smallest prime divisor, with 2 ranked first.
inline heap_t smallest_prime_index(const FactorSieve& sieve, heap_t n) {
    if (n < 2) throw domain_error("smallest_prime_index requires n >= 2");
    return sieve.prime_index(sieve.spf(n));
}

// Prime factors counted with multiplicity, except the prime 2 which counts
// at most once.
inline std::uint64_t omega_two(const Factorization& f) {
    std::uint64_t s = 0;
    for (const auto& [p, e] : f.pairs) s += (p == 2) ? 1 : e;
    return s;
}

// Number of phi-iterations from n down to 2; 0 for n <= 2 by convention.
inline heap_t shapiro_class(const FactorSieve& sieve, heap_t n) {
    if (n == 0) throw domain_error("shapiro_class(0)");
    if (n <= 2) return 0;
    heap_t c = 0;
    while (n != 2) {
        n = totient(factorize(sieve, n));
        ++c;
    }
    return c;
}

// The same class computed from the factorization alone: classes add over
// coprime odd parts, a factor 2^a contributes a-1, and each odd prime p
// contributes 1 + class(p-1). Prime classes are memoized.
class ShapiroClasses {
public:
    explicit ShapiroClasses(const FactorSieve& sieve) : sieve_(&sieve) {}

    heap_t of(heap_t n) {
        Factorization f = factorize(*sieve_, n);
        heap_t c = 0;
        for (const auto& [p, e] : f.pairs)
            c += (p == 2) ? e - 1 : e * of_prime(p);
        return c;
    }

private:
    heap_t of_prime(heap_t p) {
        if (p == 2) return 0;
        auto it = prime_class_.find(p);
        if (it != prime_class_.end()) return it->second;
        heap_t c = 1 + of(p - 1);
        prime_class_.emplace(p, c);
        return c;
    }

    const FactorSieve* sieve_;
    std::unordered_map<heap_t, heap_t> prime_class_;
};

}  // namespace arithsg
