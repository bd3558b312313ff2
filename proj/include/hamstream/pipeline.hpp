#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <vector>

#include "hamstream/approx_stream.hpp"
#include "hamstream/kangaroo.hpp"
#include "hamstream/meter.hpp"
#include "hamstream/one_mismatch.hpp"
#include "hamstream/small_period.hpp"

namespace hamstream {

enum class Variant : std::uint8_t { Oracle, Offline, Online, Approx, Streaming };

struct RunStats {
    WorkMeter meter;
    std::size_t filter_survivors = 0;
    std::size_t aborted_blocks = 0;
    std::size_t blocks = 0;
    std::uint64_t max_block_engine_ops = 0;
    std::size_t max_small_period_census = 0;
    std::size_t max_engine_queue = 0;
    std::size_t max_streaming_census = 0;
    std::int64_t max_lag = 0;
};

/// Deterministic exact matcher. Small approximate period: block-wise
/// run-length grid. Large approximate period: a counting filter computes
/// every distance, alignments within the 3k/2 threshold are re-verified by
/// LCP jumps, everything else is No.
std::vector<AlignmentOutput> run_offline(const SymbolSeq& pattern, const SymbolSeq& text,
                                         std::int64_t k, RunStats* stats = nullptr);

/// Small-space online matcher fed one symbol at a time. The small-period
/// regime is the same as offline; the large-period regime filters with the
/// approximate matcher (epsilon = 1/2) and verifies survivors with the
/// one-mismatch query structure.
class OnlineRunner {
public:
    OnlineRunner(const SymbolSeq& pattern, std::int64_t k, std::uint64_t seed,
                 RunStats* stats = nullptr, WorkMeter* meter_override = nullptr);

    std::optional<AlignmentOutput> push(Symbol symbol);

    bool small_period() const { return small_; }
    std::size_t ell() const { return ell_; }
    std::size_t live_state_census() const;

private:
    struct Block {
        std::int64_t start;
        std::unique_ptr<SmallPeriodMatcher> matcher;
        std::uint64_t ops_at_start = 0;
    };

    SymbolSeq pattern_;
    std::int64_t k_;
    std::uint64_t seed_;
    std::size_t ell_;
    bool small_ = false;
    RunStats* stats_;
    WorkMeter* meter_;
    WorkMeter own_meter_;

    std::deque<Block> matchers_;  // at most two overlapping blocks

    std::unique_ptr<ApproxStream> filter_;  // null = always verify
    std::unique_ptr<OneMismatchIndex> verifier_;
    std::int64_t next_ = 0;
};

std::vector<AlignmentOutput> run_online(const SymbolSeq& pattern, const SymbolSeq& text,
                                        std::int64_t k, std::uint64_t seed,
                                        RunStats* stats = nullptr);

/// Worst-case-per-symbol streaming matcher: the pattern tail (last 2k^2
/// symbols) is verified promptly over a buffered window, the head runs the
/// online matcher capped at a per-symbol work budget, and a lag buffer of
/// size 2k^2 absorbs the difference. Patterns no longer than 2k^2 use the
/// buffered verifier alone.
class StreamingRunner {
public:
    StreamingRunner(const SymbolSeq& pattern, std::int64_t k, std::uint64_t seed,
                    RunStats* stats = nullptr,
                    std::optional<std::uint64_t> budget_override = std::nullopt);

    std::optional<AlignmentOutput> push(Symbol symbol);

    std::int64_t lag() const { return static_cast<std::int64_t>(pending_.size()); }
    std::uint64_t budget() const { return budget_; }
    std::size_t live_state_census() const;

private:
    std::size_t m_;
    std::int64_t k_;
    std::int64_t tail_len_ = 0;
    RunStats* stats_;
    WorkMeter* meter_;
    WorkMeter own_meter_;

    std::unique_ptr<BufferedVerifier> direct_;  // m <= 2k^2 (or k = 0)

    std::unique_ptr<BufferedVerifier> tail_;
    std::unique_ptr<OnlineRunner> head_;
    std::deque<Symbol> pending_;
    std::vector<std::int64_t> head_ring_;  // head outputs by position; -1 = No
    std::int64_t head_positions_ = 0;      // outputs produced so far
    std::uint64_t budget_ = 0;
    std::int64_t tokens_ = 0;  // work credit; spikes borrow and repay
    std::int64_t next_ = 0;
};

std::vector<AlignmentOutput> run_streaming(const SymbolSeq& pattern, const SymbolSeq& text,
                                           std::int64_t k, std::uint64_t seed,
                                           RunStats* stats = nullptr,
                                           std::optional<std::uint64_t> budget = std::nullopt);

/// Per-symbol work cap for the streaming head, calibrated so the lag bound
/// holds across the reference corpus.
std::uint64_t default_streaming_budget(std::size_t m);

std::vector<AlignmentOutput> run_variant(Variant variant, const SymbolSeq& pattern,
                                         const SymbolSeq& text, std::int64_t k, double epsilon,
                                         std::uint64_t seed, RunStats* stats = nullptr);

}  // namespace hamstream
