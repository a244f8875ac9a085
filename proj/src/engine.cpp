#include "tfnca/engine.hpp"

#include <algorithm>
#include <cassert>
#include <string>
#include <vector>

namespace tfnca {

namespace {

int wrap(int v, int n) {
    int r = v % n;
    return r < 0 ? r + n : r;
}

bool row_bit(std::span<const std::uint64_t> row, int j) {
    return (row[j >> 6] >> (j & 63)) & 1u;
}

void set_row_bit(std::span<std::uint64_t> row, int j) {
    row[j >> 6] |= 1ull << (j & 63);
}

// dst[j] = src[j + d] for d in [0, 63]: funnel shift toward lower bits,
// zero fill at the high end.
void shift_read_higher(std::span<std::uint64_t> dst,
                       std::span<const std::uint64_t> src, int d) {
    const int n = static_cast<int>(dst.size());
    if (d == 0) {
        std::copy(src.begin(), src.end(), dst.begin());
        return;
    }
    for (int k = 0; k < n; ++k) {
        const std::uint64_t lo = src[k] >> d;
        const std::uint64_t hi = k + 1 < n ? src[k + 1] << (64 - d) : 0;
        dst[k] = lo | hi;
    }
}

// dst[j] = src[j - d] for d in [0, 63]: funnel shift toward higher bits,
// zero fill at the low end. May smear valid bits into the row's padding;
// the caller re-masks.
void shift_read_lower(std::span<std::uint64_t> dst,
                      std::span<const std::uint64_t> src, int d) {
    const int n = static_cast<int>(dst.size());
    if (d == 0) {
        std::copy(src.begin(), src.end(), dst.begin());
        return;
    }
    for (int k = n - 1; k >= 0; --k) {
        const std::uint64_t hi = src[k] << d;
        const std::uint64_t lo = k > 0 ? src[k - 1] >> (64 - d) : 0;
        dst[k] = hi | lo;
    }
}

// dst[j] = src[(j + dj) mod width] under Periodic, dst[j] = src[j + dj]
// with zero fill under Null. |dj| <= 2. Output is canonical.
void column_shift(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src,
                  int dj, Boundary bc, int width, std::uint64_t last_mask) {
    const int last = static_cast<int>(dst.size()) - 1;
    if (bc == Boundary::Null) {
        if (dj >= 0) {
            shift_read_higher(dst, src, dj);
        } else {
            shift_read_lower(dst, src, -dj);
            dst[last] &= last_mask;
        }
        return;
    }
    // Periodic: normalize to a read distance r in [0, width) and rotate by
    // whichever direction moves at most two wrapped bits.
    const int r = wrap(dj, width);
    if (r == 0) {
        std::copy(src.begin(), src.end(), dst.begin());
        return;
    }
    if (r <= 2) {
        shift_read_higher(dst, src, r);
        for (int t = 0; t < r; ++t)
            if (row_bit(src, t))
                set_row_bit(dst, width - r + t);
    } else {
        const int d = width - r;  // d in {1, 2} because |dj| <= 2
        assert(d >= 1 && d <= 2);
        shift_read_lower(dst, src, d);
        dst[last] &= last_mask;
        for (int t = 0; t < d; ++t)
            if (row_bit(src, width - d + t))
                set_row_bit(dst, t);
    }
}

}  // namespace

BinaryGrid step_naive(const BinaryGrid& g, LinearRule rule, Boundary bc) {
    BinaryGrid out(g.height(), g.width());
    std::vector<Offset> sites;
    for (std::uint32_t b : decompose(rule))
        sites.push_back(offset_of_basic(b));
    for (int i = 0; i < g.height(); ++i)
        for (int j = 0; j < g.width(); ++j) {
            int bit = 0;
            for (const Offset s : sites)
                bit ^= g.get(i + s.di, j + s.dj, bc) ? 1 : 0;
            if (bit)
                out.set(i, j, true);
        }
    return out;
}

BinaryGrid step_packed(const BinaryGrid& g, LinearRule rule, Boundary bc) {
    BinaryGrid out(g.height(), g.width());
    if (rule.number() == 0)
        return out;
    const int h = g.height();
    const int wpr = g.words_per_row();
    std::vector<std::uint64_t> shifted(static_cast<std::size_t>(wpr));
    for (std::uint32_t b : decompose(rule)) {
        const Offset site = offset_of_basic(b);
        for (int i = 0; i < h; ++i) {
            int si = i + site.di;
            if (si < 0 || si >= h) {
                if (bc == Boundary::Null)
                    continue;
                si = wrap(si, h);
            }
            column_shift(shifted, g.row(si), site.dj, bc, g.width(),
                         g.last_word_mask());
            auto dst = out.mutable_row(i);
            for (int k = 0; k < wpr; ++k)
                dst[k] ^= shifted[k];
        }
    }
    return out;
}

BinaryGrid run(const BinaryGrid& g, const StepConfig& cfg) {
    if (cfg.iterations < 1)
        throw UsageError("iterations must be >= 1, got " +
                         std::to_string(cfg.iterations));
    BinaryGrid state = step_packed(g, cfg.rule, cfg.boundary);
    for (int k = 1; k < cfg.iterations; ++k)
        state = step_packed(state, cfg.rule, cfg.boundary);
    return state;
}

}  // namespace tfnca
