#include "tfnca/engine.hpp"

#include <array>
#include <bit>
#include <random>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"

using namespace tfnca;
using testing::padding_clear;
using testing::random_grid;

namespace {

BinaryGrid row_grid(const std::vector<int>& bits) {
    BinaryGrid g(1, static_cast<int>(bits.size()));
    for (std::size_t j = 0; j < bits.size(); ++j)
        if (bits[j])
            g.set(0, static_cast<int>(j), true);
    return g;
}

std::vector<int> row_bits(const BinaryGrid& g) {
    std::vector<int> bits(static_cast<std::size_t>(g.width()));
    for (int j = 0; j < g.width(); ++j)
        bits[static_cast<std::size_t>(j)] = g.at(0, j) ? 1 : 0;
    return bits;
}

}  // namespace

TEST_CASE("hand-checked single steps") {
    SUBCASE("rule 0 and all-zero inputs stay zero") {
        std::mt19937 rng(7201);
        const BinaryGrid g = random_grid(rng, 8, 8);
        CHECK(step_naive(g, LinearRule(0), Boundary::Null).popcount() == 0);
        CHECK(step_packed(g, LinearRule(0), Boundary::Periodic).popcount() == 0);
        const BinaryGrid zeros(8, 8);
        CHECK(step_packed(zeros, LinearRule(71), Boundary::Null) == zeros);
    }

    SUBCASE("rule 1 is the identity, rule 2 reads the right neighbor") {
        std::mt19937 rng(7202);
        const BinaryGrid g = random_grid(rng, 6, 70);
        CHECK(step_packed(g, LinearRule(1), Boundary::Null) == g);
        CHECK(step_packed(g, LinearRule(1), Boundary::Periodic) == g);

        BinaryGrid impulse(5, 5);
        impulse.set(2, 2, true);
        const BinaryGrid out = step_packed(impulse, LinearRule(2), Boundary::Null);
        CHECK(out.popcount() == 1);
        CHECK(out.at(2, 1));  // the 1 moves one column left
    }

    SUBCASE("self xor left-by-two on a 1x7 row, null boundary") {
        const BinaryGrid in = row_grid({0, 0, 1, 1, 1, 0, 0});
        const BinaryGrid out = step_packed(in, LinearRule(262145), Boundary::Null);
        CHECK(row_bits(out) == std::vector<int>{0, 0, 1, 1, 0, 1, 1});
        CHECK(step_naive(in, LinearRule(262145), Boundary::Null) == out);
    }

    SUBCASE("all ones under rule 1025, null boundary: right margin fires") {
        // cell xor right-by-two: interior cancels, the two last columns
        // read zero outside and keep their own 1
        const BinaryGrid ones(5, 5, true);
        const BinaryGrid out = step_packed(ones, LinearRule(1025), Boundary::Null);
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j)
                CHECK(out.at(i, j) == (j >= 3));
        // periodically there is no margin to fire
        CHECK(step_packed(ones, LinearRule(1025), Boundary::Periodic).popcount() == 0);
    }
}

TEST_CASE("packed stepping equals the per-cell evaluator") {
    std::mt19937 rng(7203);
    const std::array<std::pair<int, int>, 6> sizes{
        std::pair{1, 1}, {3, 3}, {5, 5}, {64, 64}, {33, 70}, {16, 257}};
    std::uniform_int_distribution<std::uint32_t> any_rule(0, kMaxRule);
    std::uniform_int_distribution<int> pick_size(0, static_cast<int>(sizes.size()) - 1);
    std::bernoulli_distribution coin(0.5);
    for (int k = 0; k < 150; ++k) {
        const auto [h, w] = sizes[static_cast<std::size_t>(pick_size(rng))];
        const BinaryGrid g = random_grid(rng, h, w);
        const LinearRule rule(any_rule(rng));
        const Boundary bc = coin(rng) ? Boundary::Null : Boundary::Periodic;
        const BinaryGrid packed = step_packed(g, rule, bc);
        CHECK(packed == step_naive(g, rule, bc));
        CHECK(padding_clear(packed));
    }
}

TEST_CASE("published rules across a word boundary") {
    std::mt19937 rng(7204);
    const BinaryGrid g = random_grid(rng, 9, 67);
    for (const std::uint32_t r : kPublishedRules)
        for (const Boundary bc : {Boundary::Null, Boundary::Periodic})
            CHECK(step_packed(g, LinearRule(r), bc) ==
                  step_naive(g, LinearRule(r), bc));
}

TEST_CASE("stepping is linear in the state") {
    std::mt19937 rng(7205);
    std::uniform_int_distribution<std::uint32_t> any_rule(0, kMaxRule);
    for (int k = 0; k < 60; ++k) {
        const BinaryGrid a = random_grid(rng, 12, 37);
        const BinaryGrid b = random_grid(rng, 12, 37);
        const LinearRule rule(any_rule(rng));
        for (const Boundary bc : {Boundary::Null, Boundary::Periodic})
            CHECK(step_packed(xor_grids(a, b), rule, bc) ==
                  xor_grids(step_packed(a, rule, bc), step_packed(b, rule, bc)));
    }
}

TEST_CASE("disjoint rules superpose") {
    std::mt19937 rng(7206);
    std::uniform_int_distribution<std::uint32_t> any_rule(0, kMaxRule);
    for (int k = 0; k < 60; ++k) {
        const std::uint32_t r1 = any_rule(rng);
        const std::uint32_t r2 = any_rule(rng) & ~r1;  // no shared terms
        const BinaryGrid g = random_grid(rng, 10, 66);
        for (const Boundary bc : {Boundary::Null, Boundary::Periodic})
            CHECK(step_packed(g, LinearRule(r1 | r2), bc) ==
                  xor_grids(step_packed(g, LinearRule(r1), bc),
                            step_packed(g, LinearRule(r2), bc)));
    }
}

TEST_CASE("a basic rule translates by its offset") {
    std::mt19937 rng(7207);
    std::uniform_int_distribution<int> pick_bit(0, kBasicCount - 1);
    for (int k = 0; k < 40; ++k) {
        const std::uint32_t basic = 1u << pick_bit(rng);
        const Offset site = offset_of_basic(basic);
        const BinaryGrid g = random_grid(rng, 11, 23);
        for (const Boundary bc : {Boundary::Null, Boundary::Periodic}) {
            const BinaryGrid out = step_packed(g, LinearRule(basic), bc);
            for (int i = 0; i < g.height(); ++i)
                for (int j = 0; j < g.width(); ++j)
                    CHECK(out.at(i, j) == g.get(i + site.di, j + site.dj, bc));
        }
    }
}

TEST_CASE("null stepping commutes with zero-padded embedding") {
    std::mt19937 rng(7208);
    std::uniform_int_distribution<std::uint32_t> any_rule(0, kMaxRule);
    for (int k = 0; k < 30; ++k) {
        const BinaryGrid g = random_grid(rng, 9, 14);
        BinaryGrid padded(9 + 4, 14 + 4);
        for (int i = 0; i < 9; ++i)
            for (int j = 0; j < 14; ++j)
                if (g.at(i, j))
                    padded.set(i + 2, j + 2, true);
        const LinearRule rule(any_rule(rng));
        const BinaryGrid out = step_packed(g, rule, Boundary::Null);
        const BinaryGrid padded_out = step_packed(padded, rule, Boundary::Null);
        for (int i = 0; i < 9; ++i)
            for (int j = 0; j < 14; ++j)
                CHECK(out.at(i, j) == padded_out.at(i + 2, j + 2));
    }
}

TEST_CASE("even rules cancel on constant input") {
    std::mt19937 rng(7209);
    std::uniform_int_distribution<std::uint32_t> any_rule(0, kMaxRule);
    const BinaryGrid ones(12, 12, true);
    int tested = 0;
    while (tested < 50) {
        const std::uint32_t n = any_rule(rng);
        if (std::popcount(n) % 2 != 0)
            continue;
        ++tested;
        const LinearRule rule(n);
        CHECK(step_packed(ones, rule, Boundary::Periodic).popcount() == 0);
        const BinaryGrid under_null = step_packed(ones, rule, Boundary::Null);
        for (int i = 2; i < 10; ++i)  // interior: full window available
            for (int j = 2; j < 10; ++j)
                CHECK_FALSE(under_null.at(i, j));
    }
}

TEST_CASE("run iterates and validates") {
    std::mt19937 rng(7210);
    const BinaryGrid g = random_grid(rng, 7, 31);

    CHECK(run(g, StepConfig{LinearRule(1), Boundary::Null, 3}) == g);

    const BinaryGrid once = step_packed(g, LinearRule(1097), Boundary::Periodic);
    const BinaryGrid twice = step_packed(once, LinearRule(1097), Boundary::Periodic);
    CHECK(run(g, StepConfig{LinearRule(1097), Boundary::Periodic, 2}) == twice);

    CHECK_THROWS_AS(run(g, StepConfig{LinearRule(1), Boundary::Null, 0}), UsageError);
    CHECK_THROWS_AS(run(g, StepConfig{LinearRule(1), Boundary::Null, -3}), UsageError);
}

TEST_CASE("stepping is deterministic") {
    std::mt19937 rng(7211);
    const BinaryGrid g = random_grid(rng, 40, 129);
    const LinearRule rule(kPublishedRules[5]);
    CHECK(step_packed(g, rule, Boundary::Periodic) ==
          step_packed(g, rule, Boundary::Periodic));
}
