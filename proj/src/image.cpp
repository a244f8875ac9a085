#include "tfnca/image.hpp"

#include <array>
#include <string>

namespace tfnca {

namespace {

constexpr long long kMaxPixels = 1LL << 28;

}  // namespace

GrayImage::GrayImage(int height, int width, std::uint8_t fill)
    : height_(height), width_(width) {
    if (height < 1 || width < 1)
        throw DimensionError("image dimensions must be positive, got " +
                             std::to_string(height) + "x" + std::to_string(width));
    if (static_cast<long long>(height) * width > kMaxPixels)
        throw DimensionError("image of " + std::to_string(height) + "x" +
                             std::to_string(width) + " pixels exceeds the supported size");
    pixels_.assign(static_cast<std::size_t>(height) * width, fill);
}

Threshold otsu_threshold(const GrayImage& img) {
    std::array<std::int64_t, 256> hist{};
    for (std::uint8_t v : img.pixels())
        ++hist[v];

    int lo = 255, hi = 0;
    for (int v = 0; v < 256; ++v)
        if (hist[v] != 0) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    if (lo == hi)  // constant image: threshold at its value, nothing above it
        return {lo, ThresholdOrigin::Otsu};

    std::int64_t total = 0, weighted_total = 0;
    for (int v = 0; v < 256; ++v) {
        total += hist[v];
        weighted_total += static_cast<std::int64_t>(v) * hist[v];
    }

    std::int64_t n0 = 0, s0 = 0;
    double best = -1.0;
    int best_t = lo;
    for (int t = 0; t < 256; ++t) {
        n0 += hist[t];
        s0 += static_cast<std::int64_t>(t) * hist[t];
        const std::int64_t n1 = total - n0;
        if (n0 == 0 || n1 == 0)
            continue;
        const double mu0 = static_cast<double>(s0) / static_cast<double>(n0);
        const double mu1 = static_cast<double>(weighted_total - s0) /
                           static_cast<double>(n1);
        const double variance = static_cast<double>(n0) * static_cast<double>(n1) *
                                (mu0 - mu1) * (mu0 - mu1);
        if (variance > best) {  // strict: ties keep the smallest t
            best = variance;
            best_t = t;
        }
    }
    return {best_t, ThresholdOrigin::Otsu};
}

BinaryGrid binarize(const GrayImage& img, Threshold t) {
    if (t.value < 0 || t.value > 255)
        throw UsageError("threshold " + std::to_string(t.value) +
                         " outside [0, 255]");
    BinaryGrid out(img.height(), img.width());
    for (int i = 0; i < img.height(); ++i)
        for (int j = 0; j < img.width(); ++j)
            if (img.at(i, j) > t.value)
                out.set(i, j, true);
    return out;
}

}  // namespace tfnca
