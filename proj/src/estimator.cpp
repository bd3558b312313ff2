#include "hamstream/estimator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "hamstream/fingerprint.hpp"
#include "hamstream/primes.hpp"

namespace hamstream {

namespace {
constexpr double kRepetitionScale = 10.0;  // projections = scale * log2(ref) / delta^2
}

SlidingHamEstimator::SlidingHamEstimator(std::vector<std::uint64_t> pattern, double delta,
                                         std::uint64_t reference_length, std::uint64_t seed,
                                         WorkMeter* meter)
    : len_(pattern.size()), delta_(delta), seed_(detail::mix64(seed, 0x657374ull)), meter_(meter) {
    if (len_ == 0) throw ConfigError("SlidingHamEstimator: empty pattern");
    if (delta <= 0.0 || delta > 1.0) throw ConfigError("SlidingHamEstimator: bad delta");
    if (delta < 1.0 / static_cast<double>(len_))
        throw ConfigError("SlidingHamEstimator: delta below 1/|pattern|");
    const double lg = std::max(2.0, log2_of(std::max<std::uint64_t>(reference_length, 4)));
    const double reps = kRepetitionScale * lg / (delta * delta);
    words_ = static_cast<std::size_t>(std::ceil(reps / 64.0));
    pattern_bits_.resize(len_ * words_);
    for (std::size_t u = 0; u < len_; ++u) label(pattern[u], &pattern_bits_[u * words_]);
    ring_.assign(len_ * words_, 0);
}

void SlidingHamEstimator::label(std::uint64_t symbol, std::uint64_t* out) const {
    for (std::size_t w = 0; w < words_; ++w)
        out[w] = detail::mix64(detail::mix64(seed_, w), symbol);
}

std::optional<double> SlidingHamEstimator::push(std::uint64_t symbol) {
    const std::int64_t i = next_++;
    const std::size_t slot = static_cast<std::size_t>(i % static_cast<std::int64_t>(len_));
    label(symbol, &ring_[slot * words_]);
    if (static_cast<std::size_t>(i) + 1 < len_) return std::nullopt;

    // Pattern position u pairs with stream position i - len + 1 + u, i.e.
    // ring slot (i + 1 + u) mod len. Summing popcounts across all projection
    // words gives the total projected mismatch count.
    std::uint64_t total = 0;
    for (std::size_t u = 0; u < len_; ++u) {
        const std::size_t ws = static_cast<std::size_t>((i + 1 + static_cast<std::int64_t>(u)) %
                                                        static_cast<std::int64_t>(len_));
        const std::uint64_t* a = &pattern_bits_[u * words_];
        const std::uint64_t* b = &ring_[ws * words_];
        for (std::size_t w = 0; w < words_; ++w) total += std::popcount(a[w] ^ b[w]);
    }
    if (meter_) meter_->estimator_words += len_ * words_;
    const double mean = static_cast<double>(total) / static_cast<double>(64 * words_);
    double estimate = 2.0 * mean / (1.0 - delta_ / 2.0);
    estimate = std::min(estimate, static_cast<double>(len_));
    return estimate;
}

std::vector<double> approx_ham_estimate(const std::vector<std::uint64_t>& pattern,
                                        const std::vector<std::uint64_t>& stream, double delta,
                                        std::uint64_t reference_length, std::uint64_t seed) {
    SlidingHamEstimator est(pattern, delta, reference_length, seed);
    std::vector<double> out;
    for (std::uint64_t c : stream)
        if (auto e = est.push(c)) out.push_back(*e);
    return out;
}

ExactWindowHam::ExactWindowHam(std::vector<std::uint64_t> pattern, WorkMeter* meter)
    : pattern_(std::move(pattern)), meter_(meter) {
    if (pattern_.empty()) throw ConfigError("ExactWindowHam: empty pattern");
    ring_.assign(pattern_.size(), 0);
}

std::optional<double> ExactWindowHam::push(std::uint64_t symbol) {
    const std::int64_t i = next_++;
    const std::int64_t len = static_cast<std::int64_t>(pattern_.size());
    ring_[static_cast<std::size_t>(i % len)] = symbol;
    if (i + 1 < len) return std::nullopt;
    std::int64_t d = 0;
    for (std::int64_t u = 0; u < len; ++u)
        d += pattern_[static_cast<std::size_t>(u)] !=
             ring_[static_cast<std::size_t>((i + 1 + u) % len)];
    if (meter_) meter_->estimator_words += static_cast<std::uint64_t>(len);
    return static_cast<double>(d);
}

DistanceTracker::DistanceTracker(std::vector<std::uint64_t> pattern, double delta,
                                 std::uint64_t reference_length, std::uint64_t seed,
                                 WorkMeter* meter) {
    if (delta * static_cast<double>(pattern.size()) < 1.0)
        exact_ = std::make_unique<ExactWindowHam>(std::move(pattern), meter);
    else
        est_ = std::make_unique<SlidingHamEstimator>(std::move(pattern), delta, reference_length,
                                                     seed, meter);
}

}  // namespace hamstream
