#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "arithsg/common.hpp"

namespace arithsg {

// Smallest-prime-factor table plus a cumulative prime count, built once and
// immutable afterwards (safe for concurrent reads).
//
// Invariants: for 2 <= n <= limit, spf(n) is prime and divides n, and
// spf(n) == n exactly when n is prime. prime_index(2) == 1.
class FactorSieve {
public:
    static constexpr heap_t default_max_limit = heap_t(1) << 27;

    explicit FactorSieve(heap_t limit, heap_t max_limit = default_max_limit) : limit_(limit) {
        if (limit < 2)
            throw capacity_error("sieve limit must be at least 2, got " + std::to_string(limit));
        if (limit > max_limit)
            throw capacity_error("sieve limit " + std::to_string(limit) +
                                 " exceeds memory budget of " + std::to_string(max_limit) +
                                 " entries");
        spf_.assign(static_cast<std::size_t>(limit) + 1, 0);
        std::vector<std::uint32_t> primes;
        for (heap_t i = 2; i <= limit; ++i) {
            if (spf_[i] == 0) {
                spf_[i] = static_cast<std::uint32_t>(i);
                primes.push_back(static_cast<std::uint32_t>(i));
            }
            for (std::uint32_t p : primes) {
                if (p > spf_[i] || i * p > limit) break;
                spf_[i * p] = p;
            }
        }
        pi_.assign(static_cast<std::size_t>(limit) + 1, 0);
        std::uint32_t count = 0;
        for (heap_t i = 2; i <= limit; ++i) {
            if (spf_[i] == i) ++count;
            pi_[i] = count;
        }
    }

    heap_t limit() const { return limit_; }

    heap_t spf(heap_t n) const {
        check_range(n, 2);
        return spf_[n];
    }

    bool is_prime(heap_t n) const { return n >= 2 && n <= limit_ && spf_[n] == n; }

    // pi(n): number of primes <= n.
    heap_t prime_count(heap_t n) const {
        check_range(n, 0);
        return n < 2 ? 0 : pi_[n];
    }

    // Rank of the prime p, counting from prime_index(2) == 1.
    heap_t prime_index(heap_t p) const {
        if (!is_prime(p)) throw domain_error(std::to_string(p) + " is not a prime in range");
        return pi_[p];
    }

private:
    void check_range(heap_t n, heap_t lo) const {
        if (n < lo || n > limit_)
            throw domain_error("value " + std::to_string(n) + " outside sieve range [" +
                               std::to_string(lo) + ", " + std::to_string(limit_) + "]");
    }

    heap_t limit_;
    std::vector<std::uint32_t> spf_;
    std::vector<std::uint32_t> pi_;
};

// Prime factorization in canonical form: strictly increasing primes, all
// exponents >= 1; the empty list exactly for n == 1.
struct Factorization {
    heap_t n = 1;
    std::vector<std::pair<heap_t, std::uint32_t>> pairs;
};

inline Factorization factorize(const FactorSieve& sieve, heap_t n) {
    if (n == 0 || n > sieve.limit())
        throw domain_error("cannot factorize " + std::to_string(n) + " with sieve limit " +
                           std::to_string(sieve.limit()));
    Factorization f;
    f.n = n;
    while (n > 1) {
        heap_t p = sieve.spf(n);
        std::uint32_t e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.pairs.emplace_back(p, e);
    }
    return f;
}

// All divisors of n, ascending.
inline std::vector<heap_t> divisors(const FactorSieve& sieve, heap_t n) {
    Factorization f = factorize(sieve, n);
    std::vector<heap_t> ds{1};
    for (const auto& [p, e] : f.pairs) {
        std::size_t base = ds.size();
        heap_t pk = 1;
        for (std::uint32_t k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) ds.push_back(ds[i] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

}  // namespace arithsg
