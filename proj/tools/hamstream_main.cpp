#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hamstream/pipeline.hpp"

namespace {

using namespace hamstream;

std::string read_source(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open input file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

SymbolSeq parse_symbols(const std::string& raw, bool tokens, const std::string& what) {
    if (!tokens) return seq_from_bytes(raw);
    SymbolSeq seq;
    std::istringstream in(raw);
    std::string tok;
    while (in >> tok) {
        try {
            const unsigned long long v = std::stoull(tok);
            if (v > 0xffffffffull) throw std::out_of_range(tok);
            seq.push_back(static_cast<Symbol>(v));
        } catch (const std::exception&) {
            throw InputError("bad integer token in " + what + ": '" + tok + "'");
        }
    }
    return seq;
}

nlohmann::json stats_json(const RunStats& stats) {
    const WorkMeter& w = stats.meter;
    return {
        {"work",
         {{"engine_newruns", w.engine_newruns},
          {"engine_diffs", w.engine_diffs},
          {"engine_corner_pushes", w.engine_corner_pushes},
          {"matcher_steps", w.matcher_steps},
          {"estimator_words", w.estimator_words},
          {"verifier_probes", w.verifier_probes},
          {"verifier_calls", w.verifier_calls},
          {"query_steps", w.query_steps}}},
        {"filter_survivors", stats.filter_survivors},
        {"blocks", stats.blocks},
        {"aborted_blocks", stats.aborted_blocks},
        {"max_block_engine_ops", stats.max_block_engine_ops},
        {"max_small_period_census", stats.max_small_period_census},
        {"max_engine_queue", stats.max_engine_queue},
        {"max_streaming_census", stats.max_streaming_census},
        {"max_lag", stats.max_lag},
    };
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"k-mismatch matching: exact, online, approximate and streaming runners"};

    std::string variant_name;
    std::string pattern_path, text_path;
    std::int64_t k = 0;
    double epsilon = 0.5;
    std::uint64_t seed = 0;
    std::string stats_path;
    bool tokens = false;
    bool self_check = false;

    app.add_option("--variant", variant_name, "oracle|offline|online|approx|streaming")
        ->required()
        ->check(CLI::IsMember({"oracle", "offline", "online", "approx", "streaming"}));
    app.add_option("--pattern", pattern_path, "pattern file")->required();
    app.add_option("--text", text_path, "text file, or - for stdin")->required();
    app.add_option("--k", k, "mismatch threshold")->required();
    app.add_option("--epsilon", epsilon, "approximation factor (approx variant)");
    app.add_option("--seed", seed, "seed for the randomised variants");
    app.add_option("--stats", stats_path, "write a JSON stats record to this file");
    app.add_flag("--tokens", tokens, "inputs are whitespace-separated integer tokens");
    app.add_flag("--self-check", self_check, "compare against the brute-force oracle");

    CLI11_PARSE(app, argc, argv);

    try {
        const SymbolSeq pattern = parse_symbols(read_source(pattern_path), tokens, "pattern");
        const SymbolSeq text = parse_symbols(read_source(text_path), tokens, "text");
        if (pattern.empty()) throw InputError("pattern is empty");
        if (text.size() < pattern.size()) throw InputError("text shorter than pattern");

        Variant variant = Variant::Oracle;
        if (variant_name == "offline") variant = Variant::Offline;
        else if (variant_name == "online") variant = Variant::Online;
        else if (variant_name == "approx") variant = Variant::Approx;
        else if (variant_name == "streaming") variant = Variant::Streaming;

        RunStats stats;
        const auto outputs = run_variant(variant, pattern, text, k, epsilon, seed, &stats);
        for (const AlignmentOutput& o : outputs)
            std::cout << o.end_index << '\t' << to_string(o) << '\n';

        int exit_code = 0;
        if (self_check) {
            const auto expected = kmismatch_oracle(pattern, text, k);
            std::size_t disagreements = 0;
            for (std::size_t i = 0; i < expected.size(); ++i)
                if (variant == Variant::Approx
                        ? (outputs[i].verdict == Verdict::No) != (expected[i].verdict == Verdict::No)
                        : outputs[i] != expected[i])
                    ++disagreements;
            std::cerr << "self-check: " << disagreements << " disagreement(s) over "
                      << expected.size() << " alignment(s)\n";
            const bool exact_variant = variant == Variant::Oracle || variant == Variant::Offline;
            if (disagreements > 0 && exact_variant) exit_code = 1;
        }
        if (!stats_path.empty()) {
            std::ofstream out(stats_path);
            out << stats_json(stats).dump(2) << '\n';
        }
        return exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
