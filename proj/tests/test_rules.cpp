#include "tfnca/rules.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <set>

#include "doctest.h"

using namespace tfnca;

TEST_CASE("basic rules cover the 5x5 window exactly once") {
    std::set<std::uint32_t> basics;
    std::set<std::pair<int, int>> sites;
    std::uint64_t sum = 0;
    for (int di = -2; di <= 2; ++di)
        for (int dj = -2; dj <= 2; ++dj) {
            const std::uint32_t b = basic_at(Offset{di, dj});
            basics.insert(b);
            sum += b;
            const Offset back = offset_of_basic(b);
            sites.emplace(back.di, back.dj);
            CHECK(back == Offset{di, dj});
        }
    CHECK(basics.size() == 25);
    CHECK(sites.size() == 25);
    // 25 distinct powers of two below 2^25 must be all of them
    CHECK(sum == kMaxRule);
}

TEST_CASE("offset anchors: the cell itself, its left neighbor, the corners") {
    CHECK(offset_of_basic(1) == Offset{0, 0});
    CHECK(offset_of_basic(32) == Offset{0, -1});
    CHECK(offset_of_basic(2) == Offset{0, 1});
    CHECK(offset_of_basic(1024) == Offset{0, 2});
    CHECK(offset_of_basic(262144) == Offset{0, -2});
    CHECK(offset_of_basic(1048576) == Offset{-2, -2});
    CHECK(offset_of_basic(16777216) == Offset{-2, 2});
    CHECK(offset_of_basic(65536) == Offset{2, -2});
    CHECK(offset_of_basic(4096) == Offset{2, 2});
}

TEST_CASE("offset_of_basic rejects non-basics") {
    CHECK_THROWS_AS(offset_of_basic(0), InvalidBasicError);
    CHECK_THROWS_AS(offset_of_basic(3), InvalidBasicError);
    CHECK_THROWS_AS(offset_of_basic(1u << 25), InvalidBasicError);
    CHECK_THROWS_AS(basic_at(Offset{3, 0}), InvalidBasicError);
    CHECK_THROWS_AS(basic_at(Offset{0, -3}), InvalidBasicError);
}

TEST_CASE("rule numbers are bounded") {
    CHECK(LinearRule(kMaxRule).number() == kMaxRule);
    CHECK(LinearRule(0).term_count() == 0);
    CHECK_THROWS_AS(LinearRule{kRuleCount}, RuleRangeError);
}

TEST_CASE("decompose matches the published sum identities") {
    auto sorted = [](std::vector<std::uint32_t> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    CHECK(decompose(LinearRule(71)) == sorted({64, 4, 2, 1}));
    CHECK(decompose(LinearRule(1097)) == sorted({1024, 64, 8, 1}));
    CHECK(decompose(LinearRule(262176)) == sorted({262144, 32}));
    CHECK(decompose(LinearRule(1)) == std::vector<std::uint32_t>{1});
    CHECK(decompose(LinearRule(0)).empty());
}

TEST_CASE("compose inverts decompose") {
    CHECK(compose({1024, 1}).number() == 1025);
    CHECK(compose({}).number() == 0);
    CHECK(compose({131072, 1}).number() == 131073);

    std::mt19937 rng(7101);
    std::uniform_int_distribution<std::uint32_t> pick(0, kMaxRule);
    for (int k = 0; k < 200; ++k) {
        const LinearRule rule(pick(rng));
        const auto basics = decompose(rule);
        CHECK(static_cast<int>(basics.size()) == rule.term_count());
        CHECK(compose(basics) == rule);
    }
}

TEST_CASE("compose rejects duplicates and non-basics") {
    CHECK_THROWS_AS(compose({1, 1}), InvalidBasicError);
    CHECK_THROWS_AS(compose({6}), InvalidBasicError);
    CHECK_THROWS_AS(compose({0}), InvalidBasicError);
}

TEST_CASE("parse_rule accepts numbers and sums") {
    CHECK(parse_rule("262176").number() == 262176);
    CHECK(parse_rule("  71 ").number() == 71);
    CHECK(parse_rule("262144+32").number() == 262176);
    CHECK(parse_rule("1024 + 1").number() == 1025);
    CHECK(parse_rule("0").number() == 0);
}

TEST_CASE("parse_rule diagnoses each failure mode") {
    CHECK_THROWS_AS(parse_rule("33554432"), RuleRangeError);
    CHECK_THROWS_AS(parse_rule("999999999999"), RuleRangeError);
    CHECK_THROWS_AS(parse_rule("abc"), RuleParseError);
    CHECK_THROWS_AS(parse_rule(""), RuleParseError);
    CHECK_THROWS_AS(parse_rule("-5"), RuleParseError);
    CHECK_THROWS_AS(parse_rule("12x"), RuleParseError);
    CHECK_THROWS_AS(parse_rule("1+"), RuleParseError);
    CHECK_THROWS_AS(parse_rule("1+1"), InvalidBasicError);
    CHECK_THROWS_AS(parse_rule("3+4"), InvalidBasicError);
    CHECK_THROWS_AS(parse_rule("33554432+1"), InvalidBasicError);
}

TEST_CASE("neighborhood masks nest and classify rules") {
    const auto vn = neighborhood_mask(Neighborhood::VonNeumann);
    const auto moore = neighborhood_mask(Neighborhood::Moore);
    const auto extended = neighborhood_mask(Neighborhood::ExtendedMoore);
    CHECK(std::popcount(vn) == 5);
    CHECK(std::popcount(moore) == 9);
    CHECK(std::popcount(extended) == 25);
    CHECK((vn & ~moore) == 0);
    CHECK((moore & ~extended) == 0);

    CHECK(conforms_to(LinearRule(1), Neighborhood::VonNeumann));
    CHECK(conforms_to(LinearRule(71), Neighborhood::Moore));
    // reach-two rules need the extended window
    CHECK_FALSE(conforms_to(LinearRule(1025), Neighborhood::Moore));
    CHECK(conforms_to(LinearRule(1025), Neighborhood::ExtendedMoore));
}

TEST_CASE("published rules are two-term and in range") {
    for (const std::uint32_t r : kPublishedRules) {
        const LinearRule rule(r);
        CHECK(rule.term_count() == 2);
        CHECK(conforms_to(rule, Neighborhood::ExtendedMoore));
    }
    CHECK(std::is_sorted(kPublishedRules.begin(), kPublishedRules.end()));
}
