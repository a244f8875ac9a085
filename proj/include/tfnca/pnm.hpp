#pragma once

#include <string>
#include <variant>

#include "tfnca/grid.hpp"
#include "tfnca/image.hpp"

namespace tfnca {

// The four single-channel PNM flavors. P1/P4 are bitmaps (PBM), P2/P5 are
// graymaps (PGM); P1/P2 are ASCII, P4/P5 binary.
enum class PnmFormat { P1, P2, P4, P5 };

// Bitmaps load as grids with cell 1 = PBM black = object; graymaps load as
// images, rescaled to maxval 255 (round half up) when stored differently.
using PnmImage = std::variant<BinaryGrid, GrayImage>;

// Parse a whole PNM payload. Header comments (# to end of line) and
// arbitrary whitespace between header tokens are accepted. Throws
// FormatError on malformed content (color P3/P6 included) and
// TruncationError when the data ends before the promised pixel count.
PnmImage read_pnm(const std::string& bytes);

// read_pnm on a file's contents; throws IoError when unreadable.
PnmImage read_pnm_file(const std::string& path);

// Serializers emit a canonical byte stream: single spaces between header
// tokens, a single newline after the header, row-major data (ASCII rows one
// per line), maxval 255 for graymaps, MSB-first row-padded bytes for P4.
// Asking for a graymap format with a grid (or vice versa) throws UsageError.
std::string write_pnm(const BinaryGrid& grid, PnmFormat format);
std::string write_pnm(const GrayImage& img, PnmFormat format);
std::string write_pnm(const PnmImage& img, PnmFormat format);

void write_pnm_file(const PnmImage& img, PnmFormat format, const std::string& path);

}  // namespace tfnca
