#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "hamstream/meter.hpp"
#include "hamstream/core.hpp"

namespace hamstream {

/// One-sided sliding-window Hamming distance estimator.
///
/// Each symbol is mapped to a word of random projection bits; the summed
/// bit-difference between the projected pattern and the projected window,
/// scaled by two over the projection count, is an unbiased distance
/// estimate. The reported value is inflated by 1/(1 - delta/2) so that with
/// the configured projection count it lands in [true, (1+delta) * true]
/// except with small per-alignment probability. Zero distance is reported
/// exactly.
class SlidingHamEstimator {
public:
    /// reference_length sizes the repetition count (more repetitions for
    /// longer runs); delta must be at least 1/|pattern|.
    SlidingHamEstimator(std::vector<std::uint64_t> pattern, double delta,
                        std::uint64_t reference_length, std::uint64_t seed,
                        WorkMeter* meter = nullptr);

    /// Absorb the next stream symbol; once a full window exists, returns the
    /// estimate for the window ending at it.
    std::optional<double> push(std::uint64_t symbol);

    std::size_t projections() const { return 64 * words_; }
    std::size_t live_state_census() const { return (pattern_bits_.size() + ring_.size()); }

private:
    void label(std::uint64_t symbol, std::uint64_t* out) const;

    std::size_t len_;
    double delta_;
    std::size_t words_;
    std::uint64_t seed_;
    std::vector<std::uint64_t> pattern_bits_;  // len * words
    std::vector<std::uint64_t> ring_;          // len * words, slot pos mod len
    std::int64_t next_ = 0;
    WorkMeter* meter_;
};

/// Convenience driver: per-alignment estimates over a whole stream.
std::vector<double> approx_ham_estimate(const std::vector<std::uint64_t>& pattern,
                                        const std::vector<std::uint64_t>& stream, double delta,
                                        std::uint64_t reference_length, std::uint64_t seed);

/// Exact sliding-window distance for patterns too short to estimate
/// (below 1/delta the estimator's precondition cannot hold; counting
/// directly is cheaper anyway).
class ExactWindowHam {
public:
    explicit ExactWindowHam(std::vector<std::uint64_t> pattern, WorkMeter* meter = nullptr);

    std::optional<double> push(std::uint64_t symbol);

    std::size_t live_state_census() const { return pattern_.size() + ring_.size(); }

private:
    std::vector<std::uint64_t> pattern_;
    std::vector<std::uint64_t> ring_;
    std::int64_t next_ = 0;
    WorkMeter* meter_;
};

/// Either of the two sliding trackers behind one push interface.
class DistanceTracker {
public:
    DistanceTracker(std::vector<std::uint64_t> pattern, double delta,
                    std::uint64_t reference_length, std::uint64_t seed, WorkMeter* meter);

    std::optional<double> push(std::uint64_t symbol) {
        return exact_ ? exact_->push(symbol) : est_->push(symbol);
    }
    bool exact() const { return exact_ != nullptr; }
    std::size_t live_state_census() const {
        return exact_ ? exact_->live_state_census() : est_->live_state_census();
    }

private:
    std::unique_ptr<ExactWindowHam> exact_;
    std::unique_ptr<SlidingHamEstimator> est_;
};

}  // namespace hamstream
