#pragma once

#include <cstdint>
#include <optional>
#include <queue>
#include <vector>

#include "hamstream/meter.hpp"
#include "hamstream/rle.hpp"
#include "hamstream/rle_engine.hpp"
#include "hamstream/suffix_encoder.hpp"

namespace hamstream {

/// Exact k-mismatch matching over one text block when the pattern has a
/// small approximate period ell <= k.
///
/// The pattern and text are split into ell residue classes and run-length
/// encoded; an ell x ell grid of RleEngine instances computes per-class
/// distances over the run-compressible text region, and per-position
/// distances are recovered by summing class contributions: directly for the
/// first ell in-region alignments, then incrementally from the difference
/// terms the engines report. Text whose run count overflows the budget
/// cannot contain a k-mismatch window, so the matcher aborts to "No".
///
/// Push text symbols one at a time; from position m-1 on every push yields
/// the output for that end position. Works for blocks of length up to 2m.
class SmallPeriodMatcher {
public:
    SmallPeriodMatcher(const SymbolSeq& pattern, std::int64_t k, WorkMeter* meter = nullptr);

    std::optional<AlignmentOutput> push(Symbol symbol);

    std::size_t ell() const { return ell_; }
    std::size_t pattern_total_runs() const { return pattern_runs_total_; }
    bool aborted() const { return aborted_; }
    std::int64_t pushed() const { return pos_; }
    std::int64_t first_in_region_output() const { return first_valid_; }

    /// Live tuples across the encoder, engines, queues and retained outputs.
    std::size_t live_state_census() const;
    /// Largest observed ceil(queue size / pattern runs) over all instances.
    std::size_t max_queue_per_pattern_run() const { return max_engine_queue_; }

private:
    struct Snapshot {
        std::int64_t a = 0;
        std::int64_t ham = 0;
        std::int64_t delta = 0;
    };
    struct InstanceRecord {
        Snapshot prev;
        Snapshot cur;
        std::int64_t istar = RleEngine::kNoChange;
        bool prev_real = false;
    };
    using MinHeap = std::priority_queue<std::pair<std::int64_t, std::size_t>,
                                        std::vector<std::pair<std::int64_t, std::size_t>>,
                                        std::greater<>>;

    std::size_t idx(std::size_t r, std::size_t s) const { return r * ell_ + s; }
    void handover();
    void on_event(std::size_t r, std::size_t s, std::int64_t a, const DiffOutput& out,
                  std::int64_t text_pos);
    AlignmentOutput output_step(std::int64_t i, Symbol symbol, bool announce);
    std::int64_t read_ham(std::size_t r, std::size_t s, std::int64_t x) const;
    std::int64_t read_delta(std::size_t r, std::size_t s, std::int64_t x) const;
    std::size_t klass(std::int64_t pos) const {
        return static_cast<std::size_t>(pos % static_cast<std::int64_t>(ell_));
    }

    std::size_t m_;
    std::int64_t k_;
    std::size_t ell_;
    std::vector<RunLengthList> pattern_class_runs_;
    std::vector<std::int64_t> pattern_class_len_;
    std::size_t pattern_runs_total_ = 0;

    SuffixEncoder encoder_;
    std::vector<Symbol> recent_;  // last ell symbols, slot pos mod ell

    std::vector<RleEngine> engines_;          // (r, s) -> r * ell + s
    std::vector<InstanceRecord> records_;
    std::vector<MinHeap> pending_;            // per s: (istar, r)
    std::vector<std::int64_t> ham_ring_;      // Ham at i - ell, slot i mod ell
    std::vector<std::int64_t> delta_ring_;    // block difference at i - ell
    std::vector<std::int64_t> change_ring_;   // accumulated term changes for i

    std::int64_t pos_ = 0;
    std::int64_t first_valid_ = 0;
    std::size_t total_runs_ = 0;
    std::size_t run_cap_ = 0;
    bool aborted_ = false;
    std::size_t max_engine_queue_ = 0;

    WorkMeter* meter_;
};

/// Convenience wrapper: run one block (length in [m, 2m]) through the matcher.
std::vector<AlignmentOutput> run_block(const SymbolSeq& pattern, SymbolSpan block,
                                       std::int64_t k, WorkMeter* meter = nullptr);

}  // namespace hamstream
