#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "arithsg/posexpr.hpp"

using namespace arithsg;

namespace {

std::multiset<std::pair<std::string, heap_t>> as_multiset(const Position& p) {
    std::multiset<std::pair<std::string, heap_t>> out;
    for (const auto& c : p.components) out.emplace(c.ruleset, c.heap);
    return out;
}

}  // namespace

TEST_CASE("parse basics") {
    auto p = parse_position("7@totient + 7@totative");
    REQUIRE(p.components.size() == 2);
    CHECK(p.components[0].ruleset == "totient");
    CHECK(p.components[0].heap == 7);
    CHECK(p.components[1].ruleset == "totative");
    CHECK(p.components[1].heap == 7);

    auto q = parse_position("48114@totient + 3@sub{1,2}");
    REQUIRE(q.components.size() == 2);
    CHECK(q.components[1].ruleset == "sub{1,2}");

    auto r = parse_position("3*2@dividing + 1*9@dividing");
    REQUIRE(r.components.size() == 4);
    CHECK(as_multiset(r) == std::multiset<std::pair<std::string, heap_t>>{
                                {"dividing", 2}, {"dividing", 2}, {"dividing", 2},
                                {"dividing", 9}});

    CHECK(parse_position("").components.empty());
    CHECK(parse_position("  \t ").components.empty());
    CHECK(parse_position(" 5 @ saliquot ").components.size() == 1);
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_position("7@nosuchgame"), lookup_error);
    CHECK_THROWS_AS(parse_position("0@maliquot"), parse_error);  // heap below domain
    CHECK_NOTHROW(parse_position("0@saliquot"));
    CHECK_THROWS_AS(parse_position("7totient"), parse_error);
    CHECK_THROWS_AS(parse_position("@totient"), parse_error);
    CHECK_THROWS_AS(parse_position("7@totient + "), parse_error);
    CHECK_THROWS_AS(parse_position("7@totient 3@totient"), parse_error);
    CHECK_THROWS_AS(parse_position("0*3@totient"), parse_error);

    // offsets point inside the offending token
    try {
        parse_position("7@totient + x@totative");
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(e.offset == 12);
    }
    try {
        parse_position("3@maliquot + 0@maliquot");
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(e.offset >= 15);
        CHECK(e.offset < 23);
    }
}

TEST_CASE("format") {
    Position p{{{"dividing", 2}, {"dividing", 2}, {"dividing", 2}}};
    CHECK(format_position(p) == "3*2@dividing");
    CHECK(format_position(Position{}) == "0-sum");
    Position q{{{"totative", 7}, {"totient", 7}, {"totative", 9}}};
    CHECK(format_position(q) == "9@totative + 7@totative + 7@totient");
}

TEST_CASE("format sums") {
    CHECK(format_sum(SumPosition{{2, 2, 2, 1}}) == "3*2+1");
    CHECK(format_sum(SumPosition{{8}}) == "8");
    CHECK(format_sum(SumPosition{}) == "0-sum");
    CHECK(format_sum(SumPosition{{1, 5, 5}}) == "2*5+1");
}

TEST_CASE("round trip") {
    auto p = parse_position("3*2@dividing + 9@dividing + 7@totient");
    CHECK(as_multiset(parse_position(format_position(p))) == as_multiset(p));

    std::vector<std::string> ids;
    for (const auto& d : registry())
        if (d.base || d.splits) ids.push_back(d.id);
    ids.push_back("sub{1,2}");
    ids.push_back("sub{3,5,9}");

    std::mt19937 rng(2024);
    for (int it = 0; it < 1000; ++it) {
        Position p2;
        std::size_t k = rng() % 5;
        for (std::size_t i = 0; i < k; ++i) {
            const auto& id = ids[rng() % ids.size()];
            heap_t lo = std::max<heap_t>(lookup(id).domain_min, 0);
            p2.components.push_back({id, lo + rng() % 50});
        }
        INFO(format_position(p2));
        CHECK(as_multiset(parse_position(format_position(p2))) == as_multiset(p2));
    }
}
