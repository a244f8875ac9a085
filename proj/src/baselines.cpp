#include "tfnca/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

namespace tfnca {

namespace {

std::vector<double> to_doubles(const GrayImage& img) {
    std::vector<double> out(img.pixels().size());
    std::transform(img.pixels().begin(), img.pixels().end(), out.begin(),
                   [](std::uint8_t v) { return static_cast<double>(v); });
    return out;
}

// Correlation with a 3x3 integer kernel, full-support pixels only.
std::vector<double> correlate3(const std::vector<double>& in, int h, int w,
                               const int (&k)[3][3]) {
    std::vector<double> out(in.size(), 0.0);
    for (int i = 1; i < h - 1; ++i)
        for (int j = 1; j < w - 1; ++j) {
            double acc = 0.0;
            for (int a = -1; a <= 1; ++a)
                for (int b = -1; b <= 1; ++b)
                    acc += k[a + 1][b + 1] *
                           in[static_cast<std::size_t>(i + a) * w + (j + b)];
            out[static_cast<std::size_t>(i) * w + j] = acc;
        }
    return out;
}

GradientField make_field(int h, int w, std::vector<double> gx,
                         std::vector<double> gy) {
    GradientField f;
    f.height = h;
    f.width = w;
    f.gx = std::move(gx);
    f.gy = std::move(gy);
    f.magnitude.resize(f.gx.size());
    for (std::size_t k = 0; k < f.gx.size(); ++k)
        f.magnitude[k] = std::hypot(f.gx[k], f.gy[k]);
    return f;
}

GradientField sobel_field(const std::vector<double>& in, int h, int w) {
    static constexpr int kGx[3][3] = {{-1, 0, 1}, {-2, 0, 2}, {-1, 0, 1}};
    static constexpr int kGy[3][3] = {{-1, -2, -1}, {0, 0, 0}, {1, 2, 1}};
    return make_field(h, w, correlate3(in, h, w, kGx), correlate3(in, h, w, kGy));
}

GradientField prewitt_field(const std::vector<double>& in, int h, int w) {
    static constexpr int kGx[3][3] = {{-1, 0, 1}, {-1, 0, 1}, {-1, 0, 1}};
    static constexpr int kGy[3][3] = {{-1, -1, -1}, {0, 0, 0}, {1, 1, 1}};
    return make_field(h, w, correlate3(in, h, w, kGx), correlate3(in, h, w, kGy));
}

// 2x2 kernels anchored at the top-left sample.
GradientField roberts_field(const std::vector<double>& in, int h, int w) {
    std::vector<double> gx(in.size(), 0.0), gy(in.size(), 0.0);
    for (int i = 0; i < h - 1; ++i)
        for (int j = 0; j < w - 1; ++j) {
            const std::size_t p = static_cast<std::size_t>(i) * w + j;
            gx[p] = in[p] - in[p + w + 1];  // [[1, 0], [0, -1]]
            gy[p] = in[p + 1] - in[p + w];  // [[0, 1], [-1, 0]]
        }
    return make_field(h, w, std::move(gx), std::move(gy));
}

int sign_class(double v, double floor) {
    if (v > floor)
        return 1;
    if (v < -floor)
        return -1;
    return 0;
}

// Non-maximum suppression and hysteresis over a ready gradient field.
CannyStages finish_canny(GradientField g, double low, double high) {
    const int h = g.height, w = g.width;
    BinaryGrid ridge(h, w);
    auto mag_at = [&](int i, int j) {
        return i < 0 || i >= h || j < 0 || j >= w ? 0.0 : g.mag(i, j);
    };
    // forward unit step of each direction bin; backward is its negation
    constexpr int kStep[4][2] = {{0, 1}, {1, 1}, {1, 0}, {1, -1}};
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < w; ++j) {
            const double m = g.mag(i, j);
            if (m <= 0.0)
                continue;
            double deg = std::atan2(g.gy[g.index(i, j)], g.gx[g.index(i, j)]) *
                         180.0 / std::numbers::pi;
            if (deg < 0.0)
                deg += 180.0;
            int bin;
            if (deg < 22.5 || deg >= 157.5)
                bin = 0;
            else if (deg < 67.5)
                bin = 1;
            else if (deg < 112.5)
                bin = 2;
            else
                bin = 3;
            const double forward = mag_at(i + kStep[bin][0], j + kStep[bin][1]);
            const double backward = mag_at(i - kStep[bin][0], j - kStep[bin][1]);
            // strict forward / lax backward: an exactly-tied two-pixel ridge
            // keeps exactly one of the pair
            if (m > forward && m >= backward)
                ridge.set(i, j, true);
        }

    // flood 8-connected from strong ridge pixels through weak ridge pixels
    BinaryGrid edges(h, w);
    std::vector<std::pair<int, int>> stack;
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < w; ++j) {
            if (!ridge.at(i, j) || g.mag(i, j) < high || edges.at(i, j))
                continue;
            edges.set(i, j, true);
            stack.emplace_back(i, j);
            while (!stack.empty()) {
                const auto [ci, cj] = stack.back();
                stack.pop_back();
                for (int a = -1; a <= 1; ++a)
                    for (int b = -1; b <= 1; ++b) {
                        const int ni = ci + a, nj = cj + b;
                        if (ni < 0 || ni >= h || nj < 0 || nj >= w)
                            continue;
                        if (edges.at(ni, nj) || !ridge.at(ni, nj))
                            continue;
                        if (g.mag(ni, nj) >= low) {
                            edges.set(ni, nj, true);
                            stack.emplace_back(ni, nj);
                        }
                    }
            }
        }

    return CannyStages{std::move(g), std::move(ridge), std::move(edges)};
}

GradientField smoothed_sobel(const GrayImage& img, double sigma) {
    if (img.height() < 3 || img.width() < 3)
        throw DimensionError("image smaller than the 3x3 gradient kernel");
    const GrayImage smoothed = smooth(img, sigma);  // validates sigma
    return sobel_field(to_doubles(smoothed), img.height(), img.width());
}

}  // namespace

GradientField gradient_operator(const GrayImage& img, GradientKind kind) {
    const int h = img.height(), w = img.width();
    const int need = kind == GradientKind::Roberts ? 2 : 3;
    if (h < need || w < need)
        throw DimensionError("image " + std::to_string(h) + "x" + std::to_string(w) +
                             " is smaller than the " + std::to_string(need) + "x" +
                             std::to_string(need) + " kernel");
    const std::vector<double> in = to_doubles(img);
    switch (kind) {
        case GradientKind::Sobel:
            return sobel_field(in, h, w);
        case GradientKind::Prewitt:
            return prewitt_field(in, h, w);
        case GradientKind::Roberts:
            return roberts_field(in, h, w);
    }
    throw UsageError("unknown gradient kind");
}

BinaryGrid threshold_magnitude(const GradientField& field, double fraction) {
    if (fraction < 0.0)
        throw UsageError("magnitude fraction must be >= 0");
    const double peak = field.magnitude.empty()
                            ? 0.0
                            : *std::max_element(field.magnitude.begin(),
                                                field.magnitude.end());
    const double cut = fraction * peak;
    BinaryGrid out(field.height, field.width);
    for (int i = 0; i < field.height; ++i)
        for (int j = 0; j < field.width; ++j)
            if (field.mag(i, j) > cut)
                out.set(i, j, true);
    return out;
}

int log_radius(double sigma) {
    if (sigma <= 0.0)
        throw UsageError("sigma must be positive");
    return static_cast<int>(std::ceil(3.0 * sigma));
}

std::vector<double> log_kernel(double sigma) {
    const int radius = log_radius(sigma);
    const int side = 2 * radius + 1;
    const double s2 = sigma * sigma;
    std::vector<double> k(static_cast<std::size_t>(side) * side);
    double sum = 0.0;
    for (int a = -radius; a <= radius; ++a)
        for (int b = -radius; b <= radius; ++b) {
            const double s = static_cast<double>(a * a + b * b);
            const double v = (s - 2.0 * s2) / (s2 * s2) * std::exp(-s / (2.0 * s2));
            k[static_cast<std::size_t>(a + radius) * side + (b + radius)] = v;
            sum += v;
        }
    const double mean = sum / static_cast<double>(side * side);
    for (double& v : k)
        v -= mean;  // discrete normalization: entries sum to (numerically) zero
    return k;
}

LogResult log_operator(const GrayImage& img, double sigma, double floor) {
    if (floor < 0.0)
        throw UsageError("contrast floor must be >= 0");
    const int radius = log_radius(sigma);  // validates sigma
    const int side = 2 * radius + 1;
    const int h = img.height(), w = img.width();
    if (h < side || w < side)
        throw DimensionError("image " + std::to_string(h) + "x" + std::to_string(w) +
                             " is smaller than the " + std::to_string(side) + "x" +
                             std::to_string(side) + " kernel");

    const std::vector<double> in = to_doubles(img);
    const std::vector<double> kernel = log_kernel(sigma);
    std::vector<double> response(in.size(), 0.0);
    for (int i = radius; i < h - radius; ++i)
        for (int j = radius; j < w - radius; ++j) {
            double acc = 0.0;
            for (int a = -radius; a <= radius; ++a)
                for (int b = -radius; b <= radius; ++b)
                    acc += kernel[static_cast<std::size_t>(a + radius) * side +
                                  (b + radius)] *
                           in[static_cast<std::size_t>(i + a) * w + (j + b)];
            response[static_cast<std::size_t>(i) * w + j] = acc;
        }

    LogResult result{h, w, std::move(response), BinaryGrid(h, w)};
    auto r = [&](int i, int j) {
        return result.response[static_cast<std::size_t>(i) * w + j];
    };
    auto cls = [&](int i, int j) { return sign_class(r(i, j), floor); };
    constexpr int kDi[4] = {-1, 1, 0, 0};
    constexpr int kDj[4] = {0, 0, -1, 1};
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < w; ++j) {
            const int c = cls(i, j);
            if (c == 0) {
                // sitting exactly on the crossing: opposite strict signs straddle
                const bool horiz =
                    j > 0 && j < w - 1 && cls(i, j - 1) * cls(i, j + 1) == -1;
                const bool vert =
                    i > 0 && i < h - 1 && cls(i - 1, j) * cls(i + 1, j) == -1;
                if (horiz || vert)
                    result.edges.set(i, j, true);
                continue;
            }
            const double mine = std::abs(r(i, j));
            for (int d = 0; d < 4; ++d) {
                const int ni = i + kDi[d], nj = j + kDj[d];
                if (ni < 0 || ni >= h || nj < 0 || nj >= w)
                    continue;
                if (cls(ni, nj) != -c)
                    continue;
                // mark the weaker side of the pair; an exact tie marks the
                // negative side, so exactly one of the two pixels fires
                const double theirs = std::abs(r(ni, nj));
                if (mine < theirs || (mine == theirs && c < 0)) {
                    result.edges.set(i, j, true);
                    break;
                }
            }
        }
    return result;
}

GrayImage smooth(const GrayImage& img, double sigma) {
    const int radius = log_radius(sigma);  // same 3-sigma support
    const int h = img.height(), w = img.width();
    std::vector<double> weights(static_cast<std::size_t>(radius) + 1);
    for (int t = 0; t <= radius; ++t)
        weights[t] =
            std::exp(-static_cast<double>(t) * t / (2.0 * sigma * sigma));

    // `count` lines of `length` samples spaced `stride` apart; weights are
    // renormalized over the in-range support near the line ends
    auto pass = [&](const std::vector<double>& in, int stride, int count,
                    int length) {
        std::vector<double> out(in.size());
        const int line_stride = stride == 1 ? length : 1;
        for (int line = 0; line < count; ++line) {
            const std::size_t base = static_cast<std::size_t>(line) * line_stride;
            for (int x = 0; x < length; ++x) {
                double acc = 0.0, norm = 0.0;
                for (int t = -radius; t <= radius; ++t) {
                    const int sx = x + t;
                    if (sx < 0 || sx >= length)
                        continue;
                    const double wt = weights[t < 0 ? -t : t];
                    acc += wt * in[base + static_cast<std::size_t>(sx) * stride];
                    norm += wt;
                }
                out[base + static_cast<std::size_t>(x) * stride] = acc / norm;
            }
        }
        return out;
    };

    const std::vector<double> horizontal = pass(to_doubles(img), 1, h, w);
    const std::vector<double> both = pass(horizontal, w, w, h);
    GrayImage out(h, w);
    for (std::size_t k = 0; k < both.size(); ++k) {
        const long v = std::lround(both[k]);
        out.pixels()[k] = static_cast<std::uint8_t>(std::clamp(v, 0L, 255L));
    }
    return out;
}

CannyStages canny_stages(const GrayImage& img, const CannyParams& params) {
    if (params.low < 0.0 || params.low > params.high)
        throw UsageError("hysteresis thresholds must satisfy 0 <= low <= high");
    return finish_canny(smoothed_sobel(img, params.sigma), params.low, params.high);
}

BinaryGrid canny(const GrayImage& img, const CannyParams& params) {
    return canny_stages(img, params).edges;
}

BinaryGrid canny_relative(const GrayImage& img, double sigma, double low_fraction,
                          double high_fraction) {
    if (low_fraction < 0.0 || low_fraction > high_fraction)
        throw UsageError("hysteresis fractions must satisfy 0 <= low <= high");
    GradientField g = smoothed_sobel(img, sigma);
    const double peak = *std::max_element(g.magnitude.begin(), g.magnitude.end());
    return finish_canny(std::move(g), low_fraction * peak, high_fraction * peak)
        .edges;
}

}  // namespace tfnca
