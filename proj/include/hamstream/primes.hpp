#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hamstream/core.hpp"

namespace hamstream {

/// log2 used throughout; for interval arithmetic we work in long double and
/// guard against the degenerate m <= 2 cases.
double log2_of(std::uint64_t m);

struct PrimeInterval {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    bool empty() const { return hi < lo; }
};

/// [ceil((k/delta) log^2 m), floor((34k/delta) log^2 m)].
PrimeInterval sampling_interval(std::int64_t k, double delta, std::uint64_t m);

/// True when m >= (34k/delta) log^2 m, i.e. the interval fits below m and
/// every subpattern of any sampled modulus is non-empty.
bool length_supports_partition(std::int64_t k, double delta, std::uint64_t m);

std::vector<std::uint64_t> sieve_range(std::uint64_t lo, std::uint64_t hi);

/// Reproducible uniform draws (with replacement) over the primes of a fixed
/// interval. Same seed and draw index give the same output regardless of
/// call history.
class PrimeSampler {
public:
    PrimeSampler(std::int64_t k, double delta, std::uint64_t m, std::uint64_t seed);
    PrimeSampler(PrimeInterval interval, std::uint64_t seed);

    const PrimeInterval& interval() const { return interval_; }
    const std::vector<std::uint64_t>& primes() const { return primes_; }
    bool interval_viable() const { return !primes_.empty(); }
    /// Reports the small-length condition; callers fall back to a stored
    /// window instead of clamping the interval.
    bool small_m_fallback() const { return fallback_; }

    std::vector<std::uint64_t> sample(std::size_t count, std::uint64_t draw_index = 0) const;

private:
    PrimeInterval interval_;
    std::vector<std::uint64_t> primes_;
    std::uint64_t seed_;
    bool fallback_ = false;
};

}  // namespace hamstream
