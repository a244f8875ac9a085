#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tfnca/grid.hpp"
#include "tfnca/image.hpp"
#include "tfnca/rules.hpp"

namespace tfnca {

// Tolerance-matched confusion counts between a predicted and a reference
// edge map. Matching is greedy and one-to-one: walking predicted pixels in
// raster order, each claims the first still-unmatched reference pixel (in
// raster order) within Chebyshev distance <= tolerance.
struct EdgeComparison {
    std::int64_t true_positives = 0;
    std::int64_t false_positives = 0;
    std::int64_t false_negatives = 0;
    double precision = 1.0;  // 1 when nothing was predicted
    double recall = 1.0;     // 1 when nothing was expected
    double f_measure = 0.0;
    int tolerance = 0;
};

// Throws DimensionError unless shapes agree, UsageError on tolerance < 0.
EdgeComparison compare(const BinaryGrid& predicted, const BinaryGrid& reference,
                       int tolerance);

// --- exhaustive low-term rule search ---------------------------------------

struct CorpusPair {
    BinaryGrid input;      // already binarized
    BinaryGrid reference;  // ground-truth edge map, same shape
};

// Every rule with 1..max_terms terms, ascending by rule number.
// 25 rules at one term, 325 at two, 2625 at three.
std::vector<std::uint32_t> enumerate_rules(int max_terms);

struct RuleScore {
    std::uint32_t rule = 0;
    double mean_f = 0.0;
};

struct RuleSearchReport {
    std::int64_t candidates_evaluated = 0;
    int max_terms = 0;
    int tolerance = 0;
    Boundary boundary = Boundary::Null;
    std::string corpus;  // human-readable provenance of the pairs
    // descending mean f-measure, ties ascending by rule number
    std::vector<RuleScore> ranking;
};

// Scores one synchronous step of every candidate rule on every pair by mean
// f-measure. Deterministic: a fixed corpus always yields the same report.
// Throws UsageError on an empty corpus or max_terms outside [1, 3],
// DimensionError when a pair's shapes disagree.
RuleSearchReport search_rules(const std::vector<CorpusPair>& corpus, int max_terms,
                              Boundary boundary, int tolerance,
                              std::string corpus_description = "");

// --- synthetic scenes with exact ground truth -------------------------------

// Two-level test scenes: background 0, foreground 255, plus the exact
// boundary map. For the rectangle and disk the boundary is the foreground
// pixels 4-adjacent to background (the canvas edge counts as background);
// the checkerboard marks both sides of every class transition, so a
// one-pixel checkerboard is all boundary.
struct ShapeScene {
    GrayImage image;
    BinaryGrid boundary;
};

// Throws DimensionError when the shape does not fit the canvas.
ShapeScene rectangle_scene(int height, int width, int top, int left,
                           int rect_height, int rect_width);
ShapeScene disk_scene(int height, int width, int center_i, int center_j,
                      int radius);
ShapeScene checkerboard_scene(int height, int width, int cell);

}  // namespace tfnca
