#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tfnca/errors.hpp"
#include "tfnca/grid.hpp"

namespace tfnca {

// 8-bit grayscale raster, row-major. Anything read from a PGM with a
// different maxval has already been rescaled to [0, 255].
class GrayImage {
public:
    GrayImage(int height, int width, std::uint8_t fill = 0);

    int height() const { return height_; }
    int width() const { return width_; }

    std::uint8_t at(int i, int j) const {
        return pixels_[static_cast<std::size_t>(i) * width_ + j];
    }
    std::uint8_t& at(int i, int j) {
        return pixels_[static_cast<std::size_t>(i) * width_ + j];
    }

    std::span<const std::uint8_t> pixels() const { return pixels_; }
    std::span<std::uint8_t> pixels() { return pixels_; }

    bool operator==(const GrayImage&) const = default;

private:
    int height_ = 0;
    int width_ = 0;
    std::vector<std::uint8_t> pixels_;
};

enum class ThresholdOrigin { Fixed, Otsu };

struct Threshold {
    int value = 0;  // in [0, 255]
    ThresholdOrigin origin = ThresholdOrigin::Fixed;
};

// The threshold t maximizing the between-class variance
// w0*w1*(mu0 - mu1)^2 of the 256-bin histogram, where class 0 is {<= t}
// and class 1 is {> t}. Ties resolve to the smallest t. A constant image
// yields its own value, so it binarizes to all zeros.
Threshold otsu_threshold(const GrayImage& img);

// cell(i, j) = 1 iff pixel(i, j) > t.value (strictly). Throws UsageError
// when t.value is outside [0, 255].
BinaryGrid binarize(const GrayImage& img, Threshold t);

}  // namespace tfnca
