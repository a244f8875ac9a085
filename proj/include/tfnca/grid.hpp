#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tfnca/errors.hpp"

namespace tfnca {

// How reads outside the lattice behave: Null reads logic 0, Periodic wraps
// toroidally (indices taken modulo the dimensions, non-negative remainder).
enum class Boundary { Null, Periodic };

// Rectangular {0,1} lattice with one bit per cell.
//
// Rows are packed LSB-first into 64-bit words: column j of a row lives in
// word j/64 at bit position j%64, so moving content toward larger j is a
// word left-shift carrying into the next word. Bits past `width` in the
// last word of each row are always 0 (canonical form); popcount, equality
// and the word-parallel stepper rely on that, so anyone writing through
// mutable_row() must re-mask the final word with last_word_mask().
class BinaryGrid {
public:
    BinaryGrid(int height, int width, bool fill = false);

    int height() const { return height_; }
    int width() const { return width_; }
    int words_per_row() const { return words_per_row_; }

    // In-range read; no bounds check, no boundary handling.
    bool at(int i, int j) const {
        return (words_[word_index(i, j)] >> (j & 63)) & 1u;
    }

    // Boundary-aware read; (i, j) may be anywhere in Z^2.
    bool get(int i, int j, Boundary bc) const;

    // Checked write; throws IndexError outside the lattice.
    void set(int i, int j, bool v);

    // Number of 1 cells.
    std::uint64_t popcount() const;

    std::span<const std::uint64_t> words() const { return words_; }

    std::span<const std::uint64_t> row(int i) const {
        return {words_.data() + static_cast<std::size_t>(i) * words_per_row_,
                static_cast<std::size_t>(words_per_row_)};
    }

    std::span<std::uint64_t> mutable_row(int i) {
        return {words_.data() + static_cast<std::size_t>(i) * words_per_row_,
                static_cast<std::size_t>(words_per_row_)};
    }

    // Mask selecting the valid bits of the last word of a row.
    std::uint64_t last_word_mask() const { return last_word_mask_; }

    // Same shape and same cells. Canonical padding makes the raw word
    // compare equivalent to a per-cell compare.
    bool operator==(const BinaryGrid&) const = default;

private:
    std::size_t word_index(int i, int j) const {
        return static_cast<std::size_t>(i) * words_per_row_ +
               static_cast<std::size_t>(j >> 6);
    }

    int height_ = 0;
    int width_ = 0;
    int words_per_row_ = 0;
    std::uint64_t last_word_mask_ = 0;
    std::vector<std::uint64_t> words_;
};

// Cellwise XOR; throws DimensionError unless shapes agree.
BinaryGrid xor_grids(const BinaryGrid& a, const BinaryGrid& b);

}  // namespace tfnca
