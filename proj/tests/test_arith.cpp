#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <set>

#include "arithsg/arith.hpp"
#include "arithsg/sieve.hpp"

using namespace arithsg;

namespace {
const FactorSieve& sieve() {
    static FactorSieve s(60000);
    return s;
}
}  // namespace

TEST_CASE("sieve smallest prime factors") {
    FactorSieve s(10);
    CHECK(s.spf(2) == 2);
    CHECK(s.spf(3) == 3);
    CHECK(s.spf(4) == 2);
    CHECK(s.spf(5) == 5);
    CHECK(s.spf(6) == 2);
    CHECK(s.spf(7) == 7);
    CHECK(s.spf(8) == 2);
    CHECK(s.spf(9) == 3);
    CHECK(s.spf(10) == 2);
    CHECK(s.prime_index(7) == 4);
    CHECK(s.prime_index(2) == 1);
    CHECK_THROWS_AS(s.spf(11), domain_error);
    CHECK_THROWS_AS(s.spf(1), domain_error);
}

TEST_CASE("sieve construction errors") {
    CHECK_THROWS_AS(FactorSieve(1), capacity_error);
    CHECK_THROWS_AS(FactorSieve(1000, 100), capacity_error);
}

TEST_CASE("sieve invariants") {
    const auto& s = sieve();
    for (heap_t n = 2; n <= 5000; ++n) {
        heap_t p = s.spf(n);
        CHECK(s.is_prime(p));
        CHECK(n % p == 0);
        CHECK((p == n) == s.is_prime(n));
    }
    // prime_index strictly increasing on primes, starting at 1
    heap_t prev = 0;
    for (heap_t p = 2; p <= 1000; ++p) {
        if (!s.is_prime(p)) continue;
        CHECK(s.prime_index(p) == prev + 1);
        prev = s.prime_index(p);
    }
}

TEST_CASE("factorize") {
    const auto& s = sieve();
    auto f12 = factorize(s, 12);
    REQUIRE(f12.pairs.size() == 2);
    CHECK(f12.pairs[0] == std::pair<heap_t, std::uint32_t>{2, 2});
    CHECK(f12.pairs[1] == std::pair<heap_t, std::uint32_t>{3, 1});
    CHECK(factorize(s, 1).pairs.empty());
    auto f = factorize(s, 48114);
    REQUIRE(f.pairs.size() == 3);
    CHECK(f.pairs[0] == std::pair<heap_t, std::uint32_t>{2, 1});
    CHECK(f.pairs[1] == std::pair<heap_t, std::uint32_t>{3, 7});
    CHECK(f.pairs[2] == std::pair<heap_t, std::uint32_t>{11, 1});
    CHECK_THROWS_AS(factorize(s, 0), domain_error);
    CHECK_THROWS_AS(factorize(s, s.limit() + 1), domain_error);
    // product of prime powers reconstructs n
    for (heap_t n = 1; n <= 3000; ++n) {
        heap_t prod = 1;
        heap_t prev_p = 0;
        for (auto [p, e] : factorize(s, n).pairs) {
            CHECK(p > prev_p);
            prev_p = p;
            for (std::uint32_t i = 0; i < e; ++i) prod *= p;
        }
        CHECK(prod == n);
    }
}

TEST_CASE("prime factor counts") {
    const auto& s = sieve();
    CHECK(big_omega(factorize(s, 12)) == 3);
    CHECK(big_omega(factorize(s, 1)) == 0);
    CHECK(big_omega(factorize(s, 8)) == 3);
    CHECK(small_omega(factorize(s, 12)) == 2);
    CHECK(small_omega(factorize(s, 1)) == 0);
    CHECK(small_omega(factorize(s, 4)) == 1);
}

TEST_CASE("divisor counts") {
    const auto& s = sieve();
    CHECK(tau(factorize(s, 46656)) == 49);
    CHECK(tau_proper(factorize(s, 2)) == 1);
    CHECK(tau(factorize(s, 1)) == 1);
    CHECK(tau_proper(factorize(s, 1)) == 0);
}

TEST_CASE("totient") {
    const auto& s = sieve();
    CHECK(totient(factorize(s, 7)) == 6);
    CHECK(totient(factorize(s, 15)) == 8);
    CHECK(totient(factorize(s, 1)) == 1);
}

TEST_CASE("two valuation and odd index") {
    CHECK(two_valuation(8) == 3);
    CHECK(two_valuation(7) == 0);
    CHECK(two_valuation(6) == 1);
    CHECK_THROWS_AS(two_valuation(0), domain_error);
    CHECK(odd_index(5) == 3);
    CHECK(odd_index(12) == 2);
    CHECK_THROWS_AS(odd_index(0), domain_error);
    for (heap_t m = 1; m <= 100; ++m) CHECK(odd_index(2 * m - 1) == m);
    for (heap_t n = 1; n <= 500; ++n) CHECK(odd_index(2 * n) == odd_index(n));
}

TEST_CASE("largest odd factor indices cover an initial segment") {
    // {i_o(x) : n <= x <= 2n-1} = {1..n}
    for (heap_t n = 1; n <= 2000; ++n) {
        std::set<heap_t> got;
        for (heap_t x = n; x <= 2 * n - 1; ++x) got.insert(odd_index(x));
        REQUIRE(got.size() == n);
        CHECK(*got.begin() == 1);
        CHECK(*got.rbegin() == n);
    }
}

TEST_CASE("smallest prime index") {
    const auto& s = sieve();
    CHECK(smallest_prime_index(s, 8) == 1);
    CHECK(smallest_prime_index(s, 7) == 4);
    CHECK(smallest_prime_index(s, 15) == 2);
    CHECK_THROWS_AS(smallest_prime_index(s, 1), domain_error);
}

TEST_CASE("prime factor count with 2 collapsed") {
    const auto& s = sieve();
    CHECK(omega_two(factorize(s, 18)) == 3);
    CHECK(omega_two(factorize(s, 8)) == 1);
    CHECK(omega_two(factorize(s, 1)) == 0);
}

TEST_CASE("shapiro class") {
    const auto& s = sieve();
    ShapiroClasses classes(s);
    CHECK(shapiro_class(s, 1) == 0);
    CHECK(shapiro_class(s, 2) == 0);
    CHECK(shapiro_class(s, 7) == 2);
    CHECK(shapiro_class(s, 15) == 3);
    CHECK(classes.of(48114) == 10);
    // the phi-iteration route and the multiplicative route agree
    for (heap_t n = 1; n <= 10000; ++n) CHECK(classes.of(n) == shapiro_class(s, n));
}

TEST_CASE("divisors and squarefree") {
    const auto& s = sieve();
    CHECK(divisors(s, 6) == std::vector<heap_t>{1, 2, 3, 6});
    CHECK(divisors(s, 1) == std::vector<heap_t>{1});
    CHECK_FALSE(is_squarefree(factorize(s, 9)));
    CHECK(is_squarefree(factorize(s, 1)));
    // non-unit proper squarefree divisors of 24
    std::vector<heap_t> sqf;
    for (heap_t d : divisors(s, 24))
        if (d > 1 && d < 24 && is_squarefree(factorize(s, d))) sqf.push_back(d);
    CHECK(sqf == std::vector<heap_t>{2, 3, 6});
}

TEST_CASE("multiplicative identities") {
    const auto& s = sieve();
    for (heap_t n = 1; n <= 10000; ++n) {
        auto f = factorize(s, n);
        CHECK((big_omega(f) == small_omega(f)) == is_squarefree(f));
        std::uint64_t t = 1;
        for (auto [p, e] : f.pairs) t *= e + 1;
        CHECK(tau(f) == t);
    }
    // phi multiplicativity on coprime pairs
    for (heap_t m = 1; m <= 100; ++m)
        for (heap_t n = 1; n <= 100; ++n) {
            if (std::gcd(m, n) != 1) continue;
            CHECK(totient(factorize(s, m * n)) ==
                  totient(factorize(s, m)) * totient(factorize(s, n)));
        }
}
