#pragma once

#include <cstdint>
#include <vector>

#include "hamstream/rle_engine.hpp"

namespace hamstream::testsupport {

struct Replay {
    std::vector<std::int64_t> ham;                    // per alignment 0..nt-1
    std::vector<std::vector<std::int64_t>> istars;    // per newrun-free stretch
    std::size_t diff_count = 0;
    std::size_t max_queue = 0;
};

/// Announce a full run-length text to an engine following its protocol
/// (Diff exactly at each reported i*, or at the next run start), and
/// reconstruct the distance at every alignment from the outputs.
inline Replay replay_engine(const RunLengthList& pattern_runs, const RunLengthList& text_runs,
                            WorkMeter* meter = nullptr) {
    RleEngine eng(pattern_runs, meter);
    std::int64_t nt = 0;
    for (const auto& [sym, len] : text_runs) nt += len;

    Replay rep;
    rep.ham.assign(static_cast<std::size_t>(nt), 0);
    std::int64_t prev_a = 0, prev_h = 0, prev_d = 0;
    bool have_prev = false;

    auto record = [&](std::int64_t a, const DiffOutput& out) {
        if (have_prev) {
            for (std::int64_t x = prev_a + 1; x < a && x < nt; ++x)
                if (x >= 0) rep.ham[static_cast<std::size_t>(x)] = prev_h + prev_d * (x - prev_a);
            // the step into a must extrapolate consistently
            if (a - 1 >= prev_a) {
                const std::int64_t expect = prev_h + prev_d * (a - 1 - prev_a);
                if (expect != out.ham - out.delta)
                    throw IntegrityError("replay_engine: inconsistent step into alignment");
            }
        }
        if (a >= 0 && a < nt) rep.ham[static_cast<std::size_t>(a)] = out.ham;
        prev_a = a;
        prev_h = out.ham;
        prev_d = out.delta;
        have_prev = true;
        rep.max_queue = std::max(rep.max_queue, eng.queue_size());
    };

    std::int64_t start = 0;
    for (std::size_t u = 0; u < text_runs.size(); ++u) {
        DiffOutput out = eng.new_run(start, text_runs[u].first);
        rep.istars.emplace_back();
        rep.istars.back().push_back(out.istar);
        record(start, out);
        const std::int64_t next_start = start + text_runs[u].second;
        const std::int64_t limit = u + 1 < text_runs.size() ? next_start - 1 : nt - 1;
        while (out.istar <= limit) {
            const std::int64_t at = out.istar;
            out = eng.diff(at);
            ++rep.diff_count;
            rep.istars.back().push_back(out.istar);
            record(at, out);
        }
        start = next_start;
    }
    for (std::int64_t x = prev_a + 1; x < nt; ++x)
        rep.ham[static_cast<std::size_t>(x)] = prev_h + prev_d * (x - prev_a);
    return rep;
}

/// Canonical run-length sequences: `runs` runs, lengths drawn from the given
/// set, symbols in first-occurrence order over a ternary alphabet.
inline void enumerate_rle(std::size_t runs, const std::vector<std::int64_t>& lengths,
                          std::vector<RunLengthList>& out, RunLengthList prefix = {},
                          Symbol used = 0) {
    if (prefix.size() == runs) {
        out.push_back(prefix);
        return;
    }
    const Symbol prev = prefix.empty() ? ~0u : prefix.back().first;
    for (Symbol s = 0; s < std::min<Symbol>(used + 1, 3); ++s) {
        if (!prefix.empty() && s == prev) continue;
        for (std::int64_t len : lengths) {
            prefix.emplace_back(s, len);
            enumerate_rle(runs, lengths, out, prefix, std::max<Symbol>(used, s + 1));
            prefix.pop_back();
        }
    }
}

}  // namespace hamstream::testsupport
