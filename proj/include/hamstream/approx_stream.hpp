#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hamstream/estimator.hpp"
#include "hamstream/fingerprint.hpp"
#include "hamstream/meter.hpp"
#include "hamstream/primes.hpp"

namespace hamstream {

/// Streaming (1+epsilon)-approximate k-mismatch matcher.
///
/// In the structural regime the pattern is length-reduced: for each sampled
/// modulus q the q subpatterns are replaced by fingerprints, split by length
/// into two reduced patterns, and the text is transformed into two identifier
/// streams carrying, per position, the identifier of the subpattern matching
/// the receiving substream's suffix (or a sentinel). A distance estimator on
/// each reduced pair recovers the count of non-matching subpatterns, whose
/// maximum over moduli approximates the true distance. Patterns too short
/// for the sampling interval use the estimator on the raw stream directly.
///
/// Output per alignment: No when the statistic exceeds (1+delta)k, else
/// floor(statistic / (1-delta)); delta = epsilon/3.
class ApproxStream {
public:
    struct Options {
        std::optional<PrimeInterval> interval;  // test override
        std::optional<bool> force_structural;
        bool record_streams;  // retain identifier streams for tests; false on Options()
    };

    ApproxStream(const SymbolSeq& pattern, std::int64_t k, double epsilon, std::uint64_t seed,
                 WorkMeter* meter = nullptr, Options options = Options());

    std::optional<AlignmentOutput> push(Symbol symbol);

    bool structural() const { return structural_; }
    double delta() const { return delta_; }
    std::size_t level_count() const { return levels_.size(); }
    std::uint64_t level_modulus(std::size_t j) const { return levels_[j].q; }
    std::size_t split_point(std::size_t j) const { return levels_[j].s_split; }
    const std::vector<std::uint64_t>& reduced_long(std::size_t j) const {
        return levels_[j].phi1;
    }
    const std::vector<std::uint64_t>& reduced_short(std::size_t j) const {
        return levels_[j].phi2;
    }
    /// Recorded identifier streams (Options::record_streams).
    const std::vector<std::uint64_t>& stream_long(std::size_t j) const { return levels_[j].c1; }
    const std::vector<std::uint64_t>& stream_short(std::size_t j) const { return levels_[j].c2; }
    /// Identifier appended for the sentinel "no dictionary match".
    static constexpr std::uint64_t kNoMatch = ~0ull;

    std::size_t live_state_census() const;

private:
    struct SubstreamState {
        std::vector<Symbol> ring;
        std::int64_t count = 0;
        SlidingFingerprint sf_long;
        SlidingFingerprint sf_short;
    };
    struct Level {
        std::uint64_t q = 0;
        std::size_t s_split = 0;   // number of shorter subpatterns
        std::int64_t len_long = 0;
        std::vector<std::uint64_t> phi1, phi2;
        std::unordered_set<std::uint64_t> dict_long, dict_short;
        std::unique_ptr<DistanceTracker> est1, est2;
        std::vector<double> est2_ring;  // last q - s_split + 1 outputs
        std::unordered_map<std::uint32_t, SubstreamState> states;
        std::vector<std::uint64_t> c1, c2;  // recorded when requested
    };

    std::optional<AlignmentOutput> emit(std::int64_t i, double statistic) const;

    std::size_t m_;
    std::int64_t k_;
    double epsilon_;
    double delta_;
    bool structural_ = false;
    bool record_streams_ = false;
    KarpRabin kr_;
    std::vector<Level> levels_;
    std::unique_ptr<DistanceTracker> direct_;  // fallback on raw symbols
    std::int64_t next_ = 0;
    std::size_t static_tuples_ = 0;
    std::size_t dynamic_tuples_ = 0;
    WorkMeter* meter_;
};

}  // namespace hamstream
