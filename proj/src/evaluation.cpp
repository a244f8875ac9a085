#include "tfnca/evaluation.hpp"

#include <algorithm>
#include <bit>
#include <thread>
#include <utility>

#include "tfnca/engine.hpp"

namespace tfnca {

namespace {

// Visit the 1 cells of a row left to right without touching zero words.
template <typename Fn>
void for_set_bits(std::span<const std::uint64_t> row, Fn&& fn) {
    for (std::size_t k = 0; k < row.size(); ++k) {
        std::uint64_t word = row[k];
        while (word != 0) {
            const int bit = std::countr_zero(word);
            fn(static_cast<int>(k * 64) + bit);
            word &= word - 1;
        }
    }
}

BinaryGrid boundary_of(const std::vector<char>& fg, int h, int w, bool two_sided) {
    BinaryGrid boundary(h, w);
    auto cls = [&](int i, int j) -> char {
        return i < 0 || i >= h || j < 0 || j >= w  // outside the canvas is background
                   ? 0
                   : fg[static_cast<std::size_t>(i) * w + j];
    };
    constexpr int kDi[4] = {-1, 1, 0, 0};
    constexpr int kDj[4] = {0, 0, -1, 1};
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < w; ++j) {
            const char me = fg[static_cast<std::size_t>(i) * w + j];
            if (!two_sided && me == 0)
                continue;
            for (int d = 0; d < 4; ++d)
                if (cls(i + kDi[d], j + kDj[d]) != me) {
                    boundary.set(i, j, true);
                    break;
                }
        }
    return boundary;
}

ShapeScene scene_from_mask(std::vector<char> fg, int h, int w, bool two_sided) {
    GrayImage image(h, w);
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < w; ++j)
            image.at(i, j) = fg[static_cast<std::size_t>(i) * w + j] ? 255 : 0;
    return ShapeScene{std::move(image), boundary_of(fg, h, w, two_sided)};
}

}  // namespace

EdgeComparison compare(const BinaryGrid& predicted, const BinaryGrid& reference,
                       int tolerance) {
    if (predicted.height() != reference.height() ||
        predicted.width() != reference.width())
        throw DimensionError("edge maps differ in shape: " +
                             std::to_string(predicted.height()) + "x" +
                             std::to_string(predicted.width()) + " vs " +
                             std::to_string(reference.height()) + "x" +
                             std::to_string(reference.width()));
    if (tolerance < 0)
        throw UsageError("tolerance must be >= 0");

    const int h = predicted.height(), w = predicted.width();
    std::vector<char> claimed(static_cast<std::size_t>(h) * w, 0);
    EdgeComparison result;
    result.tolerance = tolerance;

    for (int i = 0; i < h; ++i)
        for_set_bits(predicted.row(i), [&](int j) {
            const int i0 = std::max(0, i - tolerance);
            const int i1 = std::min(h - 1, i + tolerance);
            const int j0 = std::max(0, j - tolerance);
            const int j1 = std::min(w - 1, j + tolerance);
            for (int ni = i0; ni <= i1; ++ni)
                for (int nj = j0; nj <= j1; ++nj)
                    if (reference.at(ni, nj) &&
                        !claimed[static_cast<std::size_t>(ni) * w + nj]) {
                        claimed[static_cast<std::size_t>(ni) * w + nj] = 1;
                        ++result.true_positives;
                        return;
                    }
            ++result.false_positives;
        });

    result.false_negatives =
        static_cast<std::int64_t>(reference.popcount()) - result.true_positives;

    const auto tp = static_cast<double>(result.true_positives);
    result.precision = result.true_positives + result.false_positives == 0
                           ? 1.0
                           : tp / static_cast<double>(result.true_positives +
                                                      result.false_positives);
    result.recall = result.true_positives + result.false_negatives == 0
                        ? 1.0
                        : tp / static_cast<double>(result.true_positives +
                                                   result.false_negatives);
    const double pr = result.precision + result.recall;
    result.f_measure = pr > 0.0 ? 2.0 * result.precision * result.recall / pr : 0.0;
    return result;
}

std::vector<std::uint32_t> enumerate_rules(int max_terms) {
    if (max_terms < 1 || max_terms > 3)
        throw UsageError("max_terms must be in [1, 3], got " +
                         std::to_string(max_terms));
    std::vector<std::uint32_t> rules;
    for (std::uint32_t n = 1; n <= kMaxRule; ++n)
        if (std::popcount(n) <= max_terms)
            rules.push_back(n);
    return rules;
}

RuleSearchReport search_rules(const std::vector<CorpusPair>& corpus, int max_terms,
                              Boundary boundary, int tolerance,
                              std::string corpus_description) {
    if (corpus.empty())
        throw UsageError("rule search needs a non-empty corpus");
    for (const CorpusPair& pair : corpus)
        if (pair.input.height() != pair.reference.height() ||
            pair.input.width() != pair.reference.width())
            throw DimensionError("corpus pair shapes disagree: " +
                                 std::to_string(pair.input.height()) + "x" +
                                 std::to_string(pair.input.width()) + " vs " +
                                 std::to_string(pair.reference.height()) + "x" +
                                 std::to_string(pair.reference.width()));
    if (tolerance < 0)
        throw UsageError("tolerance must be >= 0");

    const std::vector<std::uint32_t> rules = enumerate_rules(max_terms);
    std::vector<double> scores(rules.size(), 0.0);

    // Candidates are independent, so chunk them statically across a few
    // threads; scores land in fixed slots, keeping the report deterministic.
    const std::size_t worker_count =
        std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()),
                              rules.size());
    auto score_range = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t k = lo; k < hi; ++k) {
            const LinearRule rule(rules[k]);
            double sum = 0.0;
            for (const CorpusPair& pair : corpus)
                sum += compare(step_packed(pair.input, rule, boundary),
                               pair.reference, tolerance)
                           .f_measure;
            scores[k] = sum / static_cast<double>(corpus.size());
        }
    };
    if (worker_count <= 1) {
        score_range(0, rules.size());
    } else {
        std::vector<std::thread> workers;
        const std::size_t chunk = (rules.size() + worker_count - 1) / worker_count;
        for (std::size_t t = 0; t < worker_count; ++t) {
            const std::size_t lo = t * chunk;
            const std::size_t hi = std::min(rules.size(), lo + chunk);
            if (lo < hi)
                workers.emplace_back(score_range, lo, hi);
        }
        for (std::thread& worker : workers)
            worker.join();
    }

    RuleSearchReport report;
    report.candidates_evaluated = static_cast<std::int64_t>(rules.size());
    report.max_terms = max_terms;
    report.tolerance = tolerance;
    report.boundary = boundary;
    report.corpus = std::move(corpus_description);
    report.ranking.reserve(rules.size());
    for (std::size_t k = 0; k < rules.size(); ++k)
        report.ranking.push_back(RuleScore{rules[k], scores[k]});
    std::sort(report.ranking.begin(), report.ranking.end(),
              [](const RuleScore& a, const RuleScore& b) {
                  if (a.mean_f != b.mean_f)
                      return a.mean_f > b.mean_f;
                  return a.rule < b.rule;
              });
    return report;
}

ShapeScene rectangle_scene(int height, int width, int top, int left,
                           int rect_height, int rect_width) {
    if (rect_height < 1 || rect_width < 1 || top < 0 || left < 0 ||
        top + rect_height > height || left + rect_width > width)
        throw DimensionError("rectangle does not fit the canvas");
    std::vector<char> fg(static_cast<std::size_t>(height) * width, 0);
    for (int i = top; i < top + rect_height; ++i)
        for (int j = left; j < left + rect_width; ++j)
            fg[static_cast<std::size_t>(i) * width + j] = 1;
    return scene_from_mask(std::move(fg), height, width, false);
}

ShapeScene disk_scene(int height, int width, int center_i, int center_j,
                      int radius) {
    if (radius < 0 || center_i - radius < 0 || center_i + radius >= height ||
        center_j - radius < 0 || center_j + radius >= width)
        throw DimensionError("disk does not fit the canvas");
    std::vector<char> fg(static_cast<std::size_t>(height) * width, 0);
    for (int i = 0; i < height; ++i)
        for (int j = 0; j < width; ++j) {
            const long long di = i - center_i, dj = j - center_j;
            if (di * di + dj * dj <= static_cast<long long>(radius) * radius)
                fg[static_cast<std::size_t>(i) * width + j] = 1;
        }
    return scene_from_mask(std::move(fg), height, width, false);
}

ShapeScene checkerboard_scene(int height, int width, int cell) {
    if (cell < 1 || cell > height || cell > width)
        throw DimensionError("checkerboard cell does not fit the canvas");
    std::vector<char> fg(static_cast<std::size_t>(height) * width, 0);
    for (int i = 0; i < height; ++i)
        for (int j = 0; j < width; ++j)
            if ((i / cell + j / cell) % 2 == 0)
                fg[static_cast<std::size_t>(i) * width + j] = 1;
    // both classes are objects, so both sides of a transition are boundary
    return scene_from_mask(std::move(fg), height, width, true);
}

}  // namespace tfnca
