#pragma once

#include <cstdint>

namespace hamstream {

/// Abstract operation counters standing in for wall-clock asymptotics.
/// Counters are monotone within a run; callers snapshot and subtract.
struct WorkMeter {
    std::uint64_t engine_newruns = 0;     // NewRun operations on RLE engines
    std::uint64_t engine_diffs = 0;       // Diff operations (incl. embedded ones)
    std::uint64_t engine_corner_pushes = 0;
    std::uint64_t matcher_steps = 0;      // substream matcher updates/compares
    std::uint64_t estimator_words = 0;    // estimator word operations
    std::uint64_t verifier_probes = 0;    // individual LCP probes
    std::uint64_t verifier_calls = 0;     // whole-alignment verifications
    std::uint64_t query_steps = 0;        // k-mismatch query work

    std::uint64_t engine_ops() const { return engine_newruns + engine_diffs; }
    std::uint64_t total() const {
        return engine_newruns + engine_diffs + engine_corner_pushes + matcher_steps +
               estimator_words + verifier_probes + query_steps;
    }
};

}  // namespace hamstream
