// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances and work/space constants are pinned here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "engine_replay.hpp"
#include "hamstream/one_mismatch.hpp"
#include "hamstream/pipeline.hpp"
#include "hamstream/rle.hpp"
#include "test_support.hpp"

using namespace hamstream;
namespace ts = hamstream::testsupport;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s: %s\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    failures += pass ? 0 : 1;
}

struct WorkSpaceLog {
    double max_block_ops_over_k2 = 0.0;   // criterion 8a
    bool verifier_budget_ok = true;       // criterion 8b
    double worst_verifier_margin = 0.0;
    std::int64_t lag_violations = 0;      // criterion 8c
    double max_small_census_over_k2 = 0.0;           // criterion 9
    double max_stream_census_over_budget = 0.0;
};
WorkSpaceLog ws;

// ---- criterion 1 -----------------------------------------------------------

bool criterion1(std::string& detail) {
    ts::Rng rng(20260810);
    std::size_t bad = 0, instances = 0;
    for (int regime = 0; regime < 2; ++regime) {
        for (int trial = 0; trial < 500; ++trial) {
            const auto inst = ts::corpus_instance(rng, regime == 0);
            RunStats stats;
            const auto got = run_offline(inst.pattern, inst.text, inst.k, &stats);
            const auto want = kmismatch_oracle(inst.pattern, inst.text, inst.k);
            bad += ts::disagreements(got, want);
            ++instances;

            const double k2 = static_cast<double>(inst.k) * static_cast<double>(inst.k);
            if (stats.blocks > 0) {
                ws.max_block_ops_over_k2 = std::max(
                    ws.max_block_ops_over_k2, static_cast<double>(stats.max_block_engine_ops) / k2);
                ws.max_small_census_over_k2 =
                    std::max(ws.max_small_census_over_k2,
                             static_cast<double>(stats.max_small_period_census) / k2);
            } else {
                const double ell =
                    static_cast<double>(x_period(inst.pattern, 3 * inst.k));
                const double budget = static_cast<double>(inst.text.size()) / ell + 2.0;
                const double margin = static_cast<double>(stats.meter.verifier_calls) / budget;
                ws.worst_verifier_margin = std::max(ws.worst_verifier_margin, margin);
                if (static_cast<double>(stats.meter.verifier_calls) > budget)
                    ws.verifier_budget_ok = false;
            }
        }
    }
    detail = std::to_string(bad) + " disagreement(s) over " + std::to_string(instances) +
             " instances";
    return bad == 0;
}

// ---- criterion 2 -----------------------------------------------------------

bool criterion2(std::string& detail) {
    ts::Rng rng(518);
    std::size_t alignments = 0, wrong = 0, runs = 0, bad_instances = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const auto inst = ts::corpus_instance(rng, trial % 2 == 0);
        const auto want = kmismatch_oracle(inst.pattern, inst.text, inst.k);
        for (int variant = 0; variant < 2; ++variant) {
            RunStats stats;
            const auto got =
                variant == 0
                    ? run_online(inst.pattern, inst.text, inst.k, 7000 + trial, &stats)
                    : run_streaming(inst.pattern, inst.text, inst.k, 9000 + trial, &stats);
            const std::size_t d = ts::disagreements(got, want);
            wrong += d;
            alignments += got.size();
            ++runs;
            if (static_cast<double>(d) > 0.05 * static_cast<double>(got.size()))
                ++bad_instances;

            if (variant == 1) {
                if (stats.max_lag > 2 * inst.k * inst.k) ++ws.lag_violations;
                const double lg = std::max(2.0, log2_of(inst.pattern.size()));
                const double keff = static_cast<double>(std::max<std::int64_t>(inst.k, 1));
                const double budget = keff * keff * lg * lg * lg;
                ws.max_stream_census_over_budget =
                    std::max(ws.max_stream_census_over_budget,
                             static_cast<double>(stats.max_streaming_census) / budget);
            }
            const double k2 = static_cast<double>(inst.k) * static_cast<double>(inst.k);
            if (stats.blocks > 0) {
                ws.max_block_ops_over_k2 = std::max(
                    ws.max_block_ops_over_k2, static_cast<double>(stats.max_block_engine_ops) / k2);
                ws.max_small_census_over_k2 =
                    std::max(ws.max_small_census_over_k2,
                             static_cast<double>(stats.max_small_period_census) / k2);
            }
        }
    }
    const double rate = static_cast<double>(wrong) / static_cast<double>(alignments);
    detail = std::to_string(wrong) + "/" + std::to_string(alignments) + " wrong (" +
             std::to_string(rate * 100.0) + "%), " + std::to_string(bad_instances) +
             " run(s) above 5%, " + std::to_string(runs) + " runs";
    return rate <= 0.01 && bad_instances == 0;
}

// ---- criterion 3 -----------------------------------------------------------

bool criterion3(std::string& detail) {
    const auto p = seq_from_bytes("aabaabaabaabaabaabaac");
    const auto enc = rle_encode_mod(p, 3);
    const RunLengthList a7{{'a', 7}};
    const RunLengthList b6c1{{'b', 6}, {'c', 1}};
    const bool enc_ok = enc.total_runs() == 4 && enc.class_runs(0) == a7 &&
                        enc.class_runs(1) == a7 && enc.class_runs(2) == b6c1;
    const bool period_ok = x_period(seq_from_bytes("babaa"), 1) == 2;
    detail = std::string("encoding ") + (enc_ok ? "exact" : "WRONG") + ", 1-period " +
             (period_ok ? "= 2" : "WRONG");
    return enc_ok && period_ok;
}

// ---- criterion 4 -----------------------------------------------------------

bool criterion4(std::string& detail) {
    ts::Rng rng(44);
    std::size_t violations = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::int64_t k = 1 + static_cast<std::int64_t>(rng() % 8);
        const std::size_t m = 8 + rng() % 57;
        const Symbol sigma = std::vector<Symbol>{2, 4, 26}[rng() % 3];
        const auto p = ts::small_period_pattern(rng, m, k, sigma);
        const std::size_t ell = x_period(p, 3 * k);
        if (ell > static_cast<std::size_t>(k)) {
            --trial;  // regenerate; the criterion targets the small regime
            continue;
        }
        violations +=
            rle_encode_mod(p, ell).total_runs() > static_cast<std::size_t>(4 * k) ? 1 : 0;
    }
    detail = std::to_string(violations) + " violation(s) over 200 patterns";
    return violations == 0;
}

// ---- criterion 5 -----------------------------------------------------------

bool criterion5(std::string& detail) {
    ts::Rng rng(55);
    std::size_t violations = 0, pairs = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const auto inst = ts::corpus_instance(rng, trial % 2 == 0);
        const std::size_t m = inst.pattern.size();
        const std::size_t ell = x_period(inst.pattern, 3 * inst.k);
        std::int64_t last = -1;
        for (std::size_t i = m - 1; i < inst.text.size(); ++i) {
            const auto d = hamming_distance(
                inst.pattern, SymbolSpan(inst.text).subspan(i - m + 1, m));
            if (2 * d > 3 * inst.k) continue;
            if (last >= 0) {
                ++pairs;
                violations += (static_cast<std::int64_t>(i) - last <
                               static_cast<std::int64_t>(ell))
                                  ? 1
                                  : 0;
            }
            last = static_cast<std::int64_t>(i);
        }
    }
    detail = std::to_string(violations) + " violation(s) over " + std::to_string(pairs) +
             " adjacent occurrence pairs";
    return violations == 0;
}

// ---- criterion 6 -----------------------------------------------------------

bool criterion6(std::string& detail) {
    detail.clear();
    bool all_ok = true;
    for (const double eps : {0.5, 0.25}) {
        ts::Rng rng(66);
        std::size_t within = 0, rejected = 0, low_trials = 0, high_trials = 0;
        for (int trial = 0; trial < 1000; ++trial) {
            const std::int64_t k = 1 + static_cast<std::int64_t>(rng() % 6);
            const std::size_t m = 32 + rng() % 33;
            const auto p = ts::random_seq(rng, m, 6);
            SymbolSeq window = p;
            std::size_t y;
            if (trial % 2 == 0) {
                y = rng() % (static_cast<std::size_t>(k) + 1);
            } else {
                y = 2 * static_cast<std::size_t>(k) + 1 +
                    rng() % (static_cast<std::size_t>(k) + 2);
            }
            ts::plant_mismatches(rng, window, y, 6);
            if (hamming_distance(p, window) != static_cast<std::int64_t>(y)) {
                --trial;
                continue;
            }
            ApproxStream approx(p, k, eps, 6600 + trial);
            std::optional<AlignmentOutput> out;
            for (Symbol c : window) out = approx.push(c);
            if (trial % 2 == 0) {
                ++low_trials;
                within += out && out->verdict == Verdict::Approx &&
                                  out->value >= static_cast<std::int64_t>(y) &&
                                  static_cast<double>(out->value) <=
                                      (1.0 + eps) * static_cast<double>(y)
                              ? 1
                              : 0;
            } else {
                ++high_trials;
                rejected += out && out->verdict == Verdict::No ? 1 : 0;
            }
        }
        const double a = static_cast<double>(within) / static_cast<double>(low_trials);
        const double b = static_cast<double>(rejected) / static_cast<double>(high_trials);
        all_ok = all_ok && a >= 0.99 && b >= 0.99;
        char buf[160];
        std::snprintf(buf, sizeof buf, "eps=%.2f: bracket %.1f%%, reject %.1f%%; ", eps,
                      a * 100.0, b * 100.0);
        detail += buf;
    }
    return all_ok;
}

// ---- criterion 7 -----------------------------------------------------------

bool criterion7(std::string& detail) {
    std::size_t good = 0, trials = 0, unsound = 0;
    for (std::int64_t k = 1; k <= 4; ++k) {
        ts::Rng rng(7700 + static_cast<std::uint64_t>(k));
        const std::size_t m = 600;
        const auto p = ts::random_seq(rng, m, 4);
        OneMismatchIndex::Options opt;
        opt.force_structural = true;
        OneMismatchIndex index(p, k, 7000 + static_cast<std::uint64_t>(k), nullptr, opt);
        for (int t = 0; t < 250; ++t) {
            SymbolSeq window = p;
            const std::size_t y = rng() % (2 * static_cast<std::size_t>(k) + 1);
            ts::plant_mismatches(rng, window, y, 4);
            std::set<std::int64_t> want;
            for (std::size_t x = 0; x < m; ++x)
                if (window[x] != p[x]) want.insert(static_cast<std::int64_t>(x));
            for (Symbol c : window) index.update(c);
            const auto got = index.k_mismatch_query();
            ++trials;
            if (!got) continue;
            if (!got->no)
                for (std::int64_t x : got->positions)
                    unsound += want.count(x) ? 0 : 1;
            if (want.size() <= static_cast<std::size_t>(k)) {
                const std::set<std::int64_t> positions(got->positions.begin(),
                                                       got->positions.end());
                good += !got->no &&
                                got->distance == static_cast<std::int64_t>(want.size()) &&
                                positions == want
                            ? 1
                            : 0;
            } else {
                good += got->no ? 1 : 0;
            }
        }
    }
    const double rate = static_cast<double>(good) / static_cast<double>(trials);
    detail = std::to_string(good) + "/" + std::to_string(trials) + " exact, " +
             std::to_string(unsound) + " unsound position(s)";
    return rate >= 0.99 && unsound == 0;
}

// ---- criteria 8 and 9 (measured during 1 and 2) ----------------------------

bool criterion8(std::string& detail) {
    constexpr double kBlockOpsPerK2 = 128.0;  // frozen
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "block ops/k^2 max %.1f (cap %.0f); verifier calls within n/ell+2: %s "
                  "(worst margin %.2f); lag violations %lld",
                  ws.max_block_ops_over_k2, kBlockOpsPerK2,
                  ws.verifier_budget_ok ? "yes" : "NO", ws.worst_verifier_margin,
                  static_cast<long long>(ws.lag_violations));
    detail = buf;
    return ws.max_block_ops_over_k2 <= kBlockOpsPerK2 && ws.verifier_budget_ok &&
           ws.lag_violations == 0;
}

bool criterion9(std::string& detail) {
    constexpr double kSmallCensusPerK2 = 96.0;  // frozen
    constexpr double kStreamCensusFactor = 40.0;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "small-period census/k^2 max %.1f (cap %.0f); streaming census/budget max "
                  "%.1f (cap %.0f)",
                  ws.max_small_census_over_k2, kSmallCensusPerK2,
                  ws.max_stream_census_over_budget, kStreamCensusFactor);
    detail = buf;
    return ws.max_small_census_over_k2 <= kSmallCensusPerK2 &&
           ws.max_stream_census_over_budget <= kStreamCensusFactor;
}

// ---- criterion 10 ----------------------------------------------------------

bool criterion10(std::string& detail) {
    std::size_t checked = 0, bad = 0;

    auto check_pair = [&](const RunLengthList& p, const RunLengthList& t) {
        std::int64_t mp = 0, nt = 0;
        for (const auto& run : p) mp += run.second;
        for (const auto& run : t) nt += run.second;
        if (mp > nt) return;
        const auto rep = ts::replay_engine(p, t);
        const auto dp = rle_decode(p);
        const auto dt = rle_decode(t);
        for (std::size_t i = static_cast<std::size_t>(mp) - 1; i < dt.size(); ++i) {
            const auto want =
                hamming_distance(dp, SymbolSpan(dt).subspan(i - dp.size() + 1, dp.size()));
            bad += rep.ham[i] == want ? 0 : 1;
            ++checked;
        }
    };

    std::vector<RunLengthList> sides;
    for (std::size_t runs = 1; runs <= 4; ++runs) ts::enumerate_rle(runs, {1, 2, 7}, sides);
    for (const auto& p : sides)
        for (const auto& t : sides) check_pair(p, t);

    ts::Rng rng(1010);
    for (int trial = 0; trial < 500; ++trial) {
        auto side = [&](std::int64_t cap) {
            RunLengthList runs;
            std::int64_t total = 0;
            const std::size_t count = 1 + rng() % 6;
            for (std::size_t u = 0; u < count && total < cap; ++u) {
                Symbol s = static_cast<Symbol>(rng() % 3);
                if (!runs.empty() && runs.back().first == s) s = (s + 1) % 3;
                const std::int64_t len = 1 + static_cast<std::int64_t>(
                                                 rng() % static_cast<std::uint64_t>(
                                                     std::min<std::int64_t>(10, cap - total)));
                runs.emplace_back(s, len);
                total += len;
            }
            return runs;
        };
        check_pair(side(30), side(60));
    }

    detail = std::to_string(bad) + " mismatch(es) over " + std::to_string(checked) +
             " engine outputs";
    return bad == 0 && checked > 100000;
}

template <typename F>
void run(int id, const std::string& name, F&& f) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
        ok = f(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
    char buf[32];
    std::snprintf(buf, sizeof buf, " [%.1fs]", secs.count());
    report(id, name, ok, detail + buf);
}

}  // namespace

int main() {
    run(1, "offline equals oracle on both regimes", criterion1);
    run(2, "online/streaming disagreement budget", criterion2);
    run(3, "fixed encoding and period examples", criterion3);
    run(4, "small-period patterns encode within 4k runs", criterion4);
    run(5, "threshold occurrences separated by the period", criterion5);
    run(6, "approximation bracket and rejection rates", criterion6);
    run(7, "one-mismatch structure exactness and soundness", criterion7);
    run(8, "counted-work budgets (blocks, verifier, lag)", criterion8);
    run(9, "live-state budgets (small-period, streaming)", criterion9);
    run(10, "run-length engine micro-equivalence", criterion10);
    if (failures) std::printf("%d criterion(s) FAILED\n", failures);
    else std::printf("all criteria passed\n");
    return failures ? 1 : 0;
}
