#include "tfnca/grid.hpp"

#include <bit>
#include <string>

namespace tfnca {

namespace {

// Generous ceiling that still keeps every size computation far from
// overflow: 2^30 cells is a 128 MiB packed grid.
constexpr long long kMaxCells = 1LL << 30;

int wrap(int v, int n) {
    int r = v % n;
    return r < 0 ? r + n : r;
}

}  // namespace

BinaryGrid::BinaryGrid(int height, int width, bool fill)
    : height_(height), width_(width) {
    if (height < 1 || width < 1)
        throw DimensionError("grid dimensions must be positive, got " +
                             std::to_string(height) + "x" + std::to_string(width));
    if (static_cast<long long>(height) * width > kMaxCells)
        throw DimensionError("grid of " + std::to_string(height) + "x" +
                             std::to_string(width) + " cells exceeds the supported size");
    words_per_row_ = (width + 63) / 64;
    const int rem = width & 63;
    last_word_mask_ = rem == 0 ? ~0ull : ~0ull >> (64 - rem);
    words_.assign(static_cast<std::size_t>(height) * words_per_row_,
                  fill ? ~0ull : 0ull);
    if (fill) {
        for (int i = 0; i < height_; ++i)
            mutable_row(i)[words_per_row_ - 1] &= last_word_mask_;
    }
}

bool BinaryGrid::get(int i, int j, Boundary bc) const {
    if (i < 0 || i >= height_ || j < 0 || j >= width_) {
        if (bc == Boundary::Null)
            return false;
        i = wrap(i, height_);
        j = wrap(j, width_);
    }
    return at(i, j);
}

void BinaryGrid::set(int i, int j, bool v) {
    if (i < 0 || i >= height_ || j < 0 || j >= width_)
        throw IndexError("cell (" + std::to_string(i) + ", " + std::to_string(j) +
                         ") outside " + std::to_string(height_) + "x" +
                         std::to_string(width_) + " grid");
    std::uint64_t& word = words_[word_index(i, j)];
    const std::uint64_t bit = 1ull << (j & 63);
    if (v)
        word |= bit;
    else
        word &= ~bit;
}

std::uint64_t BinaryGrid::popcount() const {
    std::uint64_t n = 0;
    for (std::uint64_t w : words_)
        n += static_cast<std::uint64_t>(std::popcount(w));
    return n;
}

BinaryGrid xor_grids(const BinaryGrid& a, const BinaryGrid& b) {
    if (a.height() != b.height() || a.width() != b.width())
        throw DimensionError("cannot xor " + std::to_string(a.height()) + "x" +
                             std::to_string(a.width()) + " with " +
                             std::to_string(b.height()) + "x" +
                             std::to_string(b.width()));
    BinaryGrid out = a;
    for (int i = 0; i < out.height(); ++i) {
        auto dst = out.mutable_row(i);
        auto src = b.row(i);
        for (int k = 0; k < out.words_per_row(); ++k)
            dst[k] ^= src[k];
    }
    return out;
}

}  // namespace tfnca
