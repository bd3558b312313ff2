#pragma once

#include <cstdint>
#include <deque>
#include <queue>
#include <vector>

#include "hamstream/meter.hpp"
#include "hamstream/rle.hpp"

namespace hamstream {

struct DiffOutput {
    std::int64_t delta = 0;  // Ham[i] - Ham[i-1] at the reported alignment
    std::int64_t istar = 0;  // next alignment at which delta can change
    std::int64_t ham = 0;    // Ham(P', T')[i]
    bool operator==(const DiffOutput&) const = default;
};

/// Streaming Hamming distance between a run-length encoded pattern and a
/// run-length encoded text announced run by run.
///
/// The mismatch matrix decomposes into monochromatic rectangles cut at
/// pattern and text run boundaries. A sweep diagonal (indexed by window end
/// position) carries the running distance and its difference sequence; each
/// rectangle contributes slope changes at the alignments where the diagonal
/// crosses its corners, kept in a priority queue. NewRun(i, s) announces that
/// a new text run starts at T'[i] = s and triggers an embedded Diff(i);
/// Diff(i) advances the sweep and reports (delta, i*, ham). Between i and
/// i* - 1 the difference stays constant unless another NewRun arrives.
///
/// Cells left of the first announced run count as matches, so reported
/// distances are exact only for windows lying inside announced text.
class RleEngine {
public:
    static constexpr std::int64_t kNoChange = INT64_MAX / 2;

    explicit RleEngine(const RunLengthList& pattern_runs, WorkMeter* meter = nullptr);

    DiffOutput new_run(std::int64_t i, Symbol symbol);
    DiffOutput diff(std::int64_t i);

    std::int64_t pattern_length() const { return pattern_length_; }
    std::size_t pattern_runs() const { return bands_.size(); }
    /// Heap entries: at most two per pattern run (one per band lane).
    std::size_t queue_size() const { return heads_.size(); }
    /// Events buffered behind the heap in per-band lanes.
    std::size_t pending_events() const { return pending_; }
    std::int64_t current_alignment() const { return cur_; }

private:
    struct Band {
        std::int64_t first_col;
        std::int64_t last_col;
        Symbol symbol;
    };
    struct Event {
        std::int64_t pos;
        std::int64_t change;
    };
    struct Head {
        std::int64_t pos;
        std::uint32_t lane;  // band index * 2 + kind
        bool operator>(const Head& o) const { return pos > o.pos; }
    };

    void enqueue(std::uint32_t lane, std::int64_t pos, std::int64_t change);
    void advance(std::int64_t target);
    DiffOutput output() const;

    std::vector<Band> bands_;
    std::int64_t pattern_length_ = 0;
    // Per band, two lanes of strictly position-increasing events (entry and
    // exit corners); the heap holds only each lane's head.
    std::vector<std::deque<Event>> lanes_;
    std::priority_queue<Head, std::vector<Head>, std::greater<Head>> heads_;
    std::size_t pending_ = 0;

    bool started_ = false;
    std::int64_t cur_ = 0;
    std::int64_t delta_ = 0;
    std::int64_t ham_ = 0;

    bool has_run_ = false;
    std::int64_t last_run_pos_ = 0;
    Symbol last_run_symbol_ = 0;
    std::int64_t last_istar_ = kNoChange;
    bool last_op_was_new_run_ = false;

    WorkMeter* meter_ = nullptr;
};

}  // namespace hamstream
