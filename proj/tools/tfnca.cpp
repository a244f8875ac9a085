// Command-line front end: binarize images, run linear rules over them,
// run the classical baselines, compare edge maps, search the rule space.

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tfnca/baselines.hpp"
#include "tfnca/engine.hpp"
#include "tfnca/evaluation.hpp"
#include "tfnca/grid.hpp"
#include "tfnca/image.hpp"
#include "tfnca/pnm.hpp"
#include "tfnca/rules.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

using namespace tfnca;

// --threshold accepts "otsu" or a fixed level in [0, 255]
struct ThresholdSpec {
    bool otsu = true;
    int value = 0;
};

ThresholdSpec parse_threshold_spec(const std::string& text) {
    if (text == "otsu")
        return {};
    int value = 0;
    const auto [ptr, ec] =
        std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || value < 0 ||
        value > 255)
        throw UsageError("threshold must be 'otsu' or an integer in [0, 255], got '" +
                         text + "'");
    return {false, value};
}

Boundary parse_boundary(const std::string& text) {
    if (text == "null")
        return Boundary::Null;
    if (text == "periodic")
        return Boundary::Periodic;
    throw UsageError("boundary must be 'null' or 'periodic', got '" + text + "'");
}

const char* boundary_name(Boundary bc) {
    return bc == Boundary::Null ? "null" : "periodic";
}

// "--rule paper" expands to the six published rules; anything else goes
// through parse_rule.
std::vector<LinearRule> expand_rules(const std::vector<std::string>& specs) {
    std::vector<LinearRule> rules;
    for (const std::string& spec : specs) {
        if (spec == "paper") {
            for (std::uint32_t r : kPublishedRules)
                rules.emplace_back(r);
        } else {
            rules.push_back(parse_rule(spec));
        }
    }
    return rules;
}

struct BinarizedInput {
    BinaryGrid grid;
    bool was_binary = false;
    int threshold = 0;  // meaningful only when !was_binary
};

BinarizedInput binarize_input(const PnmImage& img, const ThresholdSpec& spec) {
    if (const auto* grid = std::get_if<BinaryGrid>(&img))
        return {*grid, true, 0};
    const auto& gray = std::get<GrayImage>(img);
    const Threshold t = spec.otsu ? otsu_threshold(gray)
                                  : Threshold{spec.value, ThresholdOrigin::Fixed};
    return {binarize(gray, t), false, t.value};
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open '" + path + "' for writing");
    out << text;
    if (!out)
        throw IoError("failed writing '" + path + "'");
}

// ---------------------------------------------------------------------------

struct EdgeArgs {
    std::string input;
    std::vector<std::string> rule_specs;
    std::string boundary = "null";
    std::string threshold = "otsu";
    int iterations = 1;
    std::string out_dir = ".";
};

int cmd_edge(const EdgeArgs& a) {
    const std::vector<LinearRule> rules = expand_rules(a.rule_specs);
    const Boundary bc = parse_boundary(a.boundary);
    const PnmImage input = read_pnm_file(a.input);
    const BinarizedInput bin = binarize_input(input, parse_threshold_spec(a.threshold));

    std::error_code ec;
    fs::create_directories(a.out_dir, ec);
    if (ec)
        throw IoError("cannot create output directory '" + a.out_dir + "'");

    const std::string stem = fs::path(a.input).stem().string();
    json summary = {
        {"input", a.input},
        {"boundary", a.boundary},
        {"iterations", a.iterations},
        {"threshold", bin.was_binary ? json(nullptr) : json(bin.threshold)},
        {"rules", json::array()},
    };
    for (const LinearRule rule : rules) {
        if (rule.number() == 0)
            std::cerr << "warning: rule 0 maps every image to all zeros\n";
        const BinaryGrid out = run(bin.grid, StepConfig{rule, bc, a.iterations});
        const fs::path path = fs::path(a.out_dir) /
                              (stem + ".rule" + std::to_string(rule.number()) + ".pbm");
        write_pnm_file(out, PnmFormat::P4, path.string());
        summary["rules"].push_back({
            {"rule", rule.number()},
            {"terms", rule.term_count()},
            {"output", path.string()},
            {"popcount", out.popcount()},
        });
    }
    std::cout << summary.dump(2) << "\n";
    return 0;
}

struct BaselineArgs {
    std::string input;
    std::string method;
    std::string out;
    double fraction = 0.25;
    double sigma = 1.0;
    double floor = kLogContrastFloor;
    double low = 0.1;
    double high = 0.3;
};

int cmd_baseline(const BaselineArgs& a) {
    const PnmImage input = read_pnm_file(a.input);
    const auto* gray = std::get_if<GrayImage>(&input);
    if (gray == nullptr)
        throw UsageError("baselines need a grayscale image (PGM), not a bitmap");

    json params;
    BinaryGrid edges(1, 1);
    if (a.method == "sobel" || a.method == "prewitt" || a.method == "roberts") {
        const GradientKind kind = a.method == "sobel"     ? GradientKind::Sobel
                                  : a.method == "prewitt" ? GradientKind::Prewitt
                                                          : GradientKind::Roberts;
        edges = threshold_magnitude(gradient_operator(*gray, kind), a.fraction);
        params = {{"fraction", a.fraction}};
    } else if (a.method == "log") {
        edges = log_operator(*gray, a.sigma, a.floor).edges;
        params = {{"sigma", a.sigma}, {"floor", a.floor}};
    } else if (a.method == "canny") {
        edges = canny_relative(*gray, a.sigma, a.low, a.high);
        params = {{"sigma", a.sigma}, {"low", a.low}, {"high", a.high}};
    } else {
        throw UsageError("unknown method '" + a.method +
                         "' (sobel, prewitt, roberts, log, canny)");
    }

    write_pnm_file(edges, PnmFormat::P4, a.out);
    json sidecar = {
        {"input", a.input},
        {"method", a.method},
        {"output", a.out},
        {"popcount", edges.popcount()},
        {"params", params},
    };
    const std::string text = sidecar.dump(2) + "\n";
    write_text_file(fs::path(a.out).replace_extension(".json").string(), text);
    std::cout << text;
    return 0;
}

struct CompareArgs {
    std::string predicted;
    std::string reference;
    int tolerance = 0;
    std::string out;
};

int cmd_compare(const CompareArgs& a) {
    const PnmImage pred_img = read_pnm_file(a.predicted);
    const PnmImage ref_img = read_pnm_file(a.reference);
    const auto* pred = std::get_if<BinaryGrid>(&pred_img);
    const auto* ref = std::get_if<BinaryGrid>(&ref_img);
    if (pred == nullptr || ref == nullptr)
        throw UsageError("compare needs binary edge maps (PBM)");

    const EdgeComparison c = compare(*pred, *ref, a.tolerance);
    const json report = {
        {"predicted", a.predicted},
        {"reference", a.reference},
        {"true_positives", c.true_positives},
        {"false_positives", c.false_positives},
        {"false_negatives", c.false_negatives},
        {"precision", c.precision},
        {"recall", c.recall},
        {"f_measure", c.f_measure},
        {"tolerance", c.tolerance},
    };
    const std::string text = report.dump(2) + "\n";
    if (!a.out.empty())
        write_text_file(a.out, text);
    std::cout << text;
    return 0;
}

struct SearchArgs {
    std::string corpus_dir;
    int max_terms = 2;
    std::string boundary = "null";
    int tolerance = 0;
    std::string threshold = "otsu";
    std::string out;
};

int cmd_search(const SearchArgs& a) {
    const Boundary bc = parse_boundary(a.boundary);
    const ThresholdSpec threshold = parse_threshold_spec(a.threshold);

    if (!fs::is_directory(a.corpus_dir))
        throw IoError("corpus '" + a.corpus_dir + "' is not a directory");
    // pair <stem>.in.* with <stem>.ref.pbm
    std::vector<std::pair<std::string, fs::path>> inputs;
    for (const auto& entry : fs::directory_iterator(a.corpus_dir)) {
        if (!entry.is_regular_file())
            continue;
        const std::string name = entry.path().filename().string();
        const std::size_t pos = name.find(".in.");
        if (pos == std::string::npos || pos == 0)
            continue;
        inputs.emplace_back(name.substr(0, pos), entry.path());
    }
    std::sort(inputs.begin(), inputs.end());
    if (inputs.empty())
        throw UsageError("no '<stem>.in.*' inputs found in '" + a.corpus_dir + "'");
    for (std::size_t k = 1; k < inputs.size(); ++k)
        if (inputs[k].first == inputs[k - 1].first)
            throw UsageError("stem '" + inputs[k].first + "' has several inputs");

    std::vector<CorpusPair> corpus;
    std::string stems;
    for (const auto& [stem, path] : inputs) {
        const fs::path ref_path = fs::path(a.corpus_dir) / (stem + ".ref.pbm");
        if (!fs::exists(ref_path))
            throw UsageError("stem '" + stem + "' is missing its reference '" +
                             ref_path.string() + "'");
        BinarizedInput in = binarize_input(read_pnm_file(path.string()), threshold);
        PnmImage ref_img = read_pnm_file(ref_path.string());
        auto* ref = std::get_if<BinaryGrid>(&ref_img);
        if (ref == nullptr)
            throw UsageError("reference '" + ref_path.string() + "' is not binary");
        corpus.push_back(CorpusPair{std::move(in.grid), std::move(*ref)});
        stems += stems.empty() ? stem : ", " + stem;
    }

    const RuleSearchReport report = search_rules(
        corpus, a.max_terms, bc, a.tolerance,
        std::to_string(corpus.size()) + " pairs from " + a.corpus_dir + ": " + stems);

    std::cout << "rank  rule      mean_f\n";
    char line[64];
    for (std::size_t k = 0; k < report.ranking.size() && k < 10; ++k) {
        std::snprintf(line, sizeof line, "%-5zu %-9u %.6f\n", k + 1,
                      report.ranking[k].rule, report.ranking[k].mean_f);
        std::cout << line;
    }

    json ranking = json::array();
    for (const RuleScore& score : report.ranking)
        ranking.push_back({{"rule", score.rule}, {"mean_f", score.mean_f}});
    const json j = {
        {"candidates_evaluated", report.candidates_evaluated},
        {"max_terms", report.max_terms},
        {"tolerance", report.tolerance},
        {"boundary", boundary_name(report.boundary)},
        {"corpus", report.corpus},
        {"ranking", ranking},
    };
    const std::string text = j.dump(2) + "\n";
    if (!a.out.empty())
        write_text_file(a.out, text);
    else
        std::cout << text;
    return 0;
}

struct ConvertArgs {
    std::string input;
    std::string threshold = "otsu";
    std::string out;
};

int cmd_convert(const ConvertArgs& a) {
    const PnmImage input = read_pnm_file(a.input);
    if (std::holds_alternative<BinaryGrid>(input)) {
        // already a bitmap: byte-for-byte pass-through
        std::ifstream in(a.input, std::ios::binary);
        std::string bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
        write_text_file(a.out, bytes);
        std::cerr << "note: input is already binary; copied unchanged\n";
        const json j = {{"input", a.input},
                        {"output", a.out},
                        {"threshold", nullptr},
                        {"copied", true}};
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    const auto& gray = std::get<GrayImage>(input);
    const ThresholdSpec spec = parse_threshold_spec(a.threshold);
    const Threshold t = spec.otsu ? otsu_threshold(gray)
                                  : Threshold{spec.value, ThresholdOrigin::Fixed};
    write_pnm_file(binarize(gray, t), PnmFormat::P4, a.out);
    const json j = {{"input", a.input},
                    {"output", a.out},
                    {"threshold", t.value},
                    {"copied", false}};
    std::cout << j.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"edge detection with linear two-state twenty-five-neighborhood "
                 "cellular automaton rules"};
    app.require_subcommand(1);

    EdgeArgs edge_args;
    CLI::App* edge = app.add_subcommand(
        "edge", "binarize an image and apply linear rules to it");
    edge->add_option("input", edge_args.input, "PGM or PBM input")->required();
    edge->add_option("--rule", edge_args.rule_specs,
                     "rule number, '+'-separated basics, or 'paper' (repeatable)")
        ->required();
    edge->add_option("--boundary", edge_args.boundary, "null or periodic");
    edge->add_option("--threshold", edge_args.threshold, "'otsu' or 0..255");
    edge->add_option("--iterations", edge_args.iterations, "synchronous steps, >= 1");
    edge->add_option("--out-dir", edge_args.out_dir, "output directory");

    BaselineArgs baseline_args;
    CLI::App* baseline =
        app.add_subcommand("baseline", "run a classical edge detector");
    baseline->add_option("input", baseline_args.input, "PGM input")->required();
    baseline
        ->add_option("--method", baseline_args.method,
                     "sobel, prewitt, roberts, log, canny")
        ->required();
    baseline->add_option("--out", baseline_args.out, "output PBM path")->required();
    baseline->add_option("--fraction", baseline_args.fraction,
                         "gradient magnitude cut as a fraction of the maximum");
    baseline->add_option("--sigma", baseline_args.sigma, "gaussian sigma");
    baseline->add_option("--floor", baseline_args.floor,
                         "zero-crossing contrast floor (log)");
    baseline->add_option("--low", baseline_args.low,
                         "weak hysteresis threshold as a fraction of max magnitude");
    baseline->add_option("--high", baseline_args.high,
                         "strong hysteresis threshold as a fraction of max magnitude");

    CompareArgs compare_args;
    CLI::App* cmp = app.add_subcommand("compare", "score an edge map against a reference");
    cmp->add_option("predicted", compare_args.predicted, "predicted PBM")->required();
    cmp->add_option("reference", compare_args.reference, "reference PBM")->required();
    cmp->add_option("--tolerance", compare_args.tolerance,
                    "Chebyshev matching distance, >= 0");
    cmp->add_option("--out", compare_args.out, "also write the JSON report here");

    SearchArgs search_args;
    CLI::App* search =
        app.add_subcommand("search", "rank low-term rules over a paired corpus");
    search
        ->add_option("--corpus", search_args.corpus_dir,
                     "directory of <stem>.in.* / <stem>.ref.pbm pairs")
        ->required();
    search->add_option("--max-terms", search_args.max_terms, "1..3");
    search->add_option("--boundary", search_args.boundary, "null or periodic");
    search->add_option("--tolerance", search_args.tolerance,
                       "Chebyshev matching distance, >= 0");
    search->add_option("--threshold", search_args.threshold,
                       "'otsu' or 0..255, for grayscale corpus inputs");
    search->add_option("--out", search_args.out, "write the full JSON report here");

    ConvertArgs convert_args;
    CLI::App* convert = app.add_subcommand("convert", "binarize an image to PBM");
    convert->add_option("input", convert_args.input, "PGM or PBM input")->required();
    convert->add_option("--threshold", convert_args.threshold, "'otsu' or 0..255");
    convert->add_option("--out", convert_args.out, "output PBM path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (edge->parsed())
            return cmd_edge(edge_args);
        if (baseline->parsed())
            return cmd_baseline(baseline_args);
        if (cmp->parsed())
            return cmd_compare(compare_args);
        if (search->parsed())
            return cmd_search(search_args);
        if (convert->parsed())
            return cmd_convert(convert_args);
        std::cerr << "error: no subcommand\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
