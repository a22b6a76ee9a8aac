#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "arithsg/rulesets.hpp"

using namespace arithsg;

namespace {

const FactorSieve& sieve() {
    static FactorSieve s(10000);
    return s;
}

// order-insensitive view of an option list
std::set<std::vector<heap_t>> option_set(const RulesetDescriptor& rs, heap_t n) {
    std::set<std::vector<heap_t>> out;
    for (const auto& p : options(sieve(), rs, n)) out.insert(p.heaps);
    return out;
}

std::set<std::vector<heap_t>> sums(std::initializer_list<std::vector<heap_t>> ls) {
    std::set<std::vector<heap_t>> out;
    for (auto v : ls) {
        std::sort(v.begin(), v.end(), std::greater<>());
        out.insert(v);
    }
    return out;
}

bool real_ruleset(const RulesetDescriptor& d) { return d.base || d.splits; }

}  // namespace

TEST_CASE("registry contents") {
    std::set<std::string> ids;
    for (const auto& d : registry()) ids.insert(d.id);
    std::set<std::string> expected = {
        "maliquot", "saliquot", "maliquant", "saliquant", "totative", "nontotative",
        "totient", "nontotient", "mtau", "stau", "momega_big", "somega_big", "momega",
        "somega", "dividing", "divide-and-residue", "complement-grundy",
        "divide-throw-residue", "residue-throw-divisor", "m-factoring",
        "m-factoring-distinct", "s-factoring", "fullset-maliquot", "fullset-totient",
        "ps-maliquot", "ps-saliquot", "ps-maliquant", "ps-saliquant", "ps-totative",
        "ps-nontotative", "sub{S}"};
    CHECK(ids == expected);
}

TEST_CASE("lookup") {
    CHECK(lookup("maliquot").semantics == OptionSemantics::singleton_move_to);
    CHECK(lookup("ps-saliquot").domain_min == 0);
    CHECK(lookup("saliquot").domain_min == 0);
    CHECK(lookup("totative").domain_min == 1);
    CHECK_THROWS_AS(lookup("nope"), lookup_error);
    CHECK_THROWS_MATCHES(lookup("nope"), lookup_error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("divide-and-residue")));
    auto sub = lookup("sub{2,1,2}");
    CHECK(sub.id == "sub{1,2}");  // sorted, deduplicated
    CHECK(sub.subtraction_set == std::vector<heap_t>{1, 2});
    CHECK_THROWS_AS(lookup("sub{}"), lookup_error);
    CHECK_THROWS_AS(lookup("sub{a}"), lookup_error);
    CHECK_THROWS_AS(lookup("sub{S}"), lookup_error);
}

TEST_CASE("singleton options") {
    CHECK(option_set(lookup("maliquot"), 8) == sums({{1}, {2}, {4}}));
    CHECK(option_set(lookup("maliquot"), 1).empty());
    CHECK(option_set(lookup("saliquot"), 6) == sums({{5}, {4}, {3}, {0}}));
    CHECK(option_set(lookup("saliquot"), 7) == sums({{0}, {6}}));
    CHECK(option_set(lookup("maliquant"), 8) == sums({{0}, {3}, {5}, {6}, {7}}));
    CHECK(option_set(lookup("saliquant"), 10) == sums({{1}, {2}, {3}, {4}, {6}, {7}}));
    CHECK(option_set(lookup("totative"), 8) == sums({{1}, {3}, {5}, {7}}));
    CHECK(option_set(lookup("totative"), 1).empty());
    CHECK(option_set(lookup("nontotative"), 1) == sums({{0}}));
    CHECK(option_set(lookup("nontotative"), 15) ==
          sums({{0}, {3}, {5}, {6}, {9}, {10}, {12}}));
    CHECK(option_set(lookup("residue-throw-divisor"), 5) == sums({{0}, {1}, {2}}));
    CHECK(option_set(lookup("sub{1,2}"), 7) == sums({{6}, {5}}));
    CHECK(option_set(lookup("sub{1,2}"), 1).empty());  // sink at heap 1
    CHECK(option_set(lookup("sub{1,2}"), 2) == sums({{1}}));
}

TEST_CASE("counting options") {
    CHECK(option_set(lookup("totient"), 8) == sums({{4}}));
    CHECK(option_set(lookup("totient"), 1).empty());  // fixed point is terminal
    CHECK(option_set(lookup("mtau"), 1).empty());     // option 0 leaves the domain
    CHECK(option_set(lookup("mtau"), 9) == sums({{2}}));
    CHECK(option_set(lookup("stau"), 1) == sums({{0}}));
    CHECK(option_set(lookup("stau"), 0).empty());
    CHECK(option_set(lookup("nontotient"), 16) == sums({{8}}));
    CHECK(option_set(lookup("somega"), 1).empty());
    CHECK(option_set(lookup("somega_big"), 1).empty());
}

TEST_CASE("split options") {
    CHECK(option_set(lookup("dividing"), 10) ==
          sums({{5, 5}, {2, 2, 2, 2, 2}, {1, 1, 1, 1, 1, 1, 1, 1, 1, 1}}));
    CHECK(option_set(lookup("divide-and-residue"), 8) ==
          sums({{7, 1}, {6, 2}, {5, 3}, {4, 4}, {3, 3, 2}, {2, 2, 2, 2},
                {1, 1, 1, 1, 1, 1, 1, 1}}));
    CHECK(option_set(lookup("m-factoring"), 12) == sums({{6, 2}, {3, 4}, {2, 2, 3}}));
    CHECK(option_set(lookup("m-factoring"), 7).empty());
    CHECK(option_set(lookup("m-factoring-distinct"), 12) == sums({{3, 4}}));
    CHECK(option_set(lookup("s-factoring"), 12) ==
          sums({{6, 10}, {9, 8}, {10, 10, 9}}));
    CHECK(option_set(lookup("fullset-maliquot"), 6) == sums({{1, 2, 3}}));
    CHECK(option_set(lookup("fullset-maliquot"), 1).empty());
    CHECK(option_set(lookup("fullset-totient"), 3) == sums({{1, 2}}));
}

TEST_CASE("canonical emission order") {
    auto opts = options(sieve(), lookup("divide-and-residue"), 8);
    std::vector<std::vector<heap_t>> got;
    for (const auto& p : opts) got.push_back(p.heaps);
    std::vector<std::vector<heap_t>> want = {
        {7, 1}, {6, 2}, {5, 3}, {4, 4}, {3, 3, 2}, {2, 2, 2, 2}, {1, 1, 1, 1, 1, 1, 1, 1}};
    CHECK(got == want);
    auto sal = options(sieve(), lookup("saliquot"), 6);
    got.clear();
    for (const auto& p : sal) got.push_back(p.heaps);
    CHECK(got == std::vector<std::vector<heap_t>>{{5}, {4}, {3}, {0}});
}

TEST_CASE("allowed sets") {
    CHECK(allowed_set(sieve(), lookup("ps-maliquot"), 6) == std::vector<heap_t>{1, 2, 3});
    CHECK(allowed_set(sieve(), lookup("ps-totative"), 5) == std::vector<heap_t>{1, 2, 3, 4});
    CHECK(allowed_set(sieve(), lookup("ps-nontotative"), 9) == std::vector<heap_t>{3, 6});
    CHECK_THROWS_AS(allowed_set(sieve(), lookup("maliquot"), 6), usage_error);
    // subtract-flavor sets already hold the differences; ps-saliquant never
    // produces a zero heap because n itself always divides n
    for (heap_t n = 1; n <= 300; ++n) {
        for (heap_t h : allowed_set(sieve(), lookup("ps-saliquant"), n)) CHECK(h >= 1);
        for (heap_t h : allowed_set(sieve(), lookup("ps-maliquant"), n)) CHECK(h >= 1);
    }
}

TEST_CASE("powerset explicit options are capped") {
    auto opts = options(sieve(), lookup("ps-maliquot"), 6);
    CHECK(opts.size() == 7);  // 2^3 - 1 subsets
    CHECK_THROWS_AS(options(sieve(), lookup("ps-maliquant"), 100), oracle_refusal);
}

TEST_CASE("multiplicative partitions") {
    auto collect = [](heap_t n, bool coprime) {
        std::set<std::vector<heap_t>> out;
        multiplicative_partitions(n, coprime, [&](std::span<const heap_t> parts) {
            out.insert(std::vector<heap_t>(parts.begin(), parts.end()));
        });
        return out;
    };
    CHECK(collect(12, false) ==
          std::set<std::vector<heap_t>>{{2, 6}, {3, 4}, {2, 2, 3}});
    CHECK(collect(8, false) == std::set<std::vector<heap_t>>{{2, 4}, {2, 2, 2}});
    CHECK(collect(13, false).empty());
    CHECK(collect(12, true) == std::set<std::vector<heap_t>>{{3, 4}});
    CHECK(collect(4, true).empty());
    CHECK_THROWS_AS(multiplicative_partitions(1, false, [](auto) {}), domain_error);
    // parts ascending, each >= 2, product n
    for (heap_t n = 2; n <= 400; ++n) {
        multiplicative_partitions(n, false, [&](std::span<const heap_t> parts) {
            REQUIRE(parts.size() >= 2);
            heap_t prod = 1;
            for (std::size_t i = 0; i < parts.size(); ++i) {
                CHECK(parts[i] >= 2);
                if (i) CHECK(parts[i] >= parts[i - 1]);
                prod *= parts[i];
            }
            CHECK(prod == n);
        });
    }
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(options(sieve(), lookup("maliquot"), 0), domain_error);
    CHECK_THROWS_AS(options(sieve(), lookup("totative"), 0), domain_error);
    CHECK_NOTHROW(options(sieve(), lookup("saliquot"), 0));
}

TEST_CASE("well-foundedness of every ruleset") {
    // move-to: every option heap strictly below n; subtract flavors emit the
    // differences directly, all below n; powerset checked on the allowed set
    for (const auto& rs : registry()) {
        if (!real_ruleset(rs)) continue;
        bool powerset = rs.semantics == OptionSemantics::powerset_move_to ||
                        rs.semantics == OptionSemantics::powerset_subtract;
        for (heap_t n = rs.domain_min; n <= 2000; ++n) {
            if (powerset) {
                for (heap_t h : allowed_set(sieve(), rs, n)) {
                    CHECK(h < n);
                    CHECK(h >= rs.domain_min);
                }
            } else if (rs.semantics == OptionSemantics::split_sum) {
                rs.splits(sieve(), n, [&](const SplitOption& o) {
                    if (!o.parts.empty()) {
                        for (heap_t h : o.parts) CHECK((h < n && h >= rs.domain_min));
                    } else {
                        CHECK((o.part < n || o.count > 1));
                        CHECK(o.part >= rs.domain_min);
                        CHECK(o.part < n);
                        if (o.rest) CHECK((o.rest < n && o.rest >= rs.domain_min));
                    }
                });
            } else {
                rs.base(sieve(), n, [&](heap_t h) {
                    CHECK(h < n);
                    CHECK(h >= rs.domain_min);
                });
            }
        }
    }
}

TEST_CASE("option counts") {
    auto dar = lookup("divide-and-residue");
    auto div = lookup("dividing");
    for (heap_t n = 1; n <= 500; ++n) {
        CHECK(options(sieve(), dar, n).size() == n - 1);
        CHECK(options(sieve(), div, n).size() == divisors(sieve(), n).size() - 1);
    }
    // counting rulesets emit exactly one option from every non-terminal heap
    for (const char* id : {"totient", "nontotient", "mtau", "stau", "momega_big",
                           "somega_big", "momega", "somega"}) {
        auto rs = lookup(id);
        for (heap_t n = rs.domain_min; n <= 500; ++n) {
            auto opts = options(sieve(), rs, n);
            if (!is_terminal(sieve(), rs, n)) CHECK(opts.size() == 1);
        }
    }
}

TEST_CASE("no duplicate options") {
    for (const auto& rs : registry()) {
        if (!real_ruleset(rs)) continue;
        if (rs.semantics == OptionSemantics::powerset_move_to ||
            rs.semantics == OptionSemantics::powerset_subtract)
            continue;  // subsets of a set are distinct by construction
        for (heap_t n = rs.domain_min; n <= 200; ++n) {
            auto opts = options(sieve(), rs, n);
            std::set<std::vector<heap_t>> uniq;
            for (const auto& p : opts) uniq.insert(p.heaps);
            CHECK(uniq.size() == opts.size());
        }
    }
}
