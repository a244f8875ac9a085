#pragma once

// Shared fixtures for the unit suites: seeded generators plus the dumb
// per-cell oracles the packed structures are checked against.

#include <cstdint>
#include <random>

#include "tfnca/grid.hpp"
#include "tfnca/image.hpp"

namespace tfnca::testing {

inline BinaryGrid random_grid(std::mt19937& rng, int h, int w,
                              double density = 0.5) {
    std::bernoulli_distribution bit(density);
    BinaryGrid g(h, w);
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < w; ++j)
            if (bit(rng))
                g.set(i, j, true);
    return g;
}

inline GrayImage random_image(std::mt19937& rng, int h, int w, int lo = 0,
                              int hi = 255) {
    std::uniform_int_distribution<int> level(lo, hi);
    GrayImage img(h, w);
    for (auto& p : img.pixels())
        p = static_cast<std::uint8_t>(level(rng));
    return img;
}

inline std::uint64_t popcount_oracle(const BinaryGrid& g) {
    std::uint64_t n = 0;
    for (int i = 0; i < g.height(); ++i)
        for (int j = 0; j < g.width(); ++j)
            if (g.at(i, j))
                ++n;
    return n;
}

// Canonical-form oracle: every bit at column >= width must be zero, with the
// mask recomputed here rather than taken from the class under test.
inline bool padding_clear(const BinaryGrid& g) {
    const int rem = g.width() % 64;
    const std::uint64_t valid = rem == 0 ? ~0ull : (1ull << rem) - 1;
    for (int i = 0; i < g.height(); ++i)
        if ((g.row(i)[g.words_per_row() - 1] & ~valid) != 0)
            return false;
    return true;
}

inline std::uint64_t hamming_oracle(const BinaryGrid& a, const BinaryGrid& b) {
    std::uint64_t n = 0;
    for (int i = 0; i < a.height(); ++i)
        for (int j = 0; j < a.width(); ++j)
            if (a.at(i, j) != b.at(i, j))
                ++n;
    return n;
}

}  // namespace tfnca::testing
