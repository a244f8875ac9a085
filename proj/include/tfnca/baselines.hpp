#pragma once

#include <vector>

#include "tfnca/grid.hpp"
#include "tfnca/image.hpp"

namespace tfnca {

// Classical gradient/Laplacian edge detectors the automaton is measured
// against. Derivative kernels are evaluated only where their support lies
// fully inside the image; partial-support border pixels respond 0, so a
// constant image responds 0 everywhere and every operator is invariant
// under adding a constant to the input.

enum class GradientKind { Sobel, Prewitt, Roberts };

// Signed first-derivative responses. gx grows with column index, gy with
// row index; magnitude is the L2 norm of the pair.
struct GradientField {
    int height = 0;
    int width = 0;
    std::vector<double> gx, gy, magnitude;

    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(i) * width + j;
    }
    double mag(int i, int j) const { return magnitude[index(i, j)]; }
};

// Throws DimensionError when the image is smaller than the kernel
// (3x3 for Sobel/Prewitt, 2x2 for Roberts).
GradientField gradient_operator(const GrayImage& img, GradientKind kind);

// Edge map: magnitude strictly above fraction * max(magnitude). An all-zero
// field stays empty for any fraction. Throws UsageError on fraction < 0.
BinaryGrid threshold_magnitude(const GradientField& field, double fraction);

// --- Laplacian of Gaussian ---------------------------------------------

inline constexpr double kLogContrastFloor = 1e-6;

int log_radius(double sigma);  // ceil(3*sigma)

// (2R+1)^2 row-major kernel: (s - 2*sigma^2)/sigma^4 * exp(-s/(2*sigma^2))
// with s = di^2 + dj^2, mean-subtracted so the entries sum to zero.
std::vector<double> log_kernel(double sigma);

struct LogResult {
    int height;
    int width;
    std::vector<double> response;  // row-major convolution output
    BinaryGrid edges;              // zero-crossing pixels
};

// Convolves with the LoG kernel (valid region only) and marks zero
// crossings. Responses within `floor` of zero count as zero; a crossing is
// a 4-adjacent strictly-positive/strictly-negative pair, and the pixel
// with the smaller absolute response is marked (exact ties mark the
// negative side; an exactly-zero pixel flanked by opposite signs is
// marked). Throws UsageError on sigma <= 0 or floor < 0, DimensionError
// when the image is smaller than the kernel.
LogResult log_operator(const GrayImage& img, double sigma,
                       double floor = kLogContrastFloor);

// --- Canny ----------------------------------------------------------------

// Separable Gaussian smoothing, radius ceil(3*sigma), weights renormalized
// over the in-range support and the result rounded back to the integer
// grid (so a constant image smooths to itself exactly).
GrayImage smooth(const GrayImage& img, double sigma);

// Absolute hysteresis thresholds on the smoothed Sobel magnitude.
struct CannyParams {
    double sigma = 1.0;
    double low = 0.0;
    double high = 0.0;
};

struct CannyStages {
    GradientField gradient;  // Sobel of the smoothed image
    BinaryGrid ridge;        // non-maximum-suppression survivors
    BinaryGrid edges;        // after hysteresis; always a subset of ridge
};

// Smooth -> Sobel -> non-maximum suppression -> hysteresis. Suppression
// quantizes the gradient direction to 4 bins and keeps a pixel iff its
// magnitude strictly exceeds the forward neighbor's and is >= the backward
// neighbor's, so an exactly-tied two-pixel ridge keeps one pixel.
// Hysteresis seeds at magnitude >= high and grows 8-connected through
// ridge pixels >= low. Throws UsageError on sigma <= 0, low < 0 or
// low > high; DimensionError when the image is smaller than 3x3.
CannyStages canny_stages(const GrayImage& img, const CannyParams& params);

BinaryGrid canny(const GrayImage& img, const CannyParams& params);

// Thresholds given as fractions of the maximum gradient magnitude.
BinaryGrid canny_relative(const GrayImage& img, double sigma,
                          double low_fraction, double high_fraction);

}  // namespace tfnca
