#include "hamstream/primes.hpp"

#include <cmath>
#include <random>

#include "hamstream/fingerprint.hpp"

namespace hamstream {

double log2_of(std::uint64_t m) { return std::log2(static_cast<double>(m)); }

PrimeInterval sampling_interval(std::int64_t k, double delta, std::uint64_t m) {
    if (k < 0) throw InputError("sampling_interval: negative k");
    if (!(delta > 0.0) || delta > 1.0) throw InputError("sampling_interval: delta out of range");
    if (m < 2) return {2, 1};  // empty
    const long double lg2 = static_cast<long double>(log2_of(m)) * log2_of(m);
    const long double base = static_cast<long double>(k) / delta * lg2;
    PrimeInterval iv;
    iv.lo = static_cast<std::uint64_t>(std::ceil(base));
    iv.hi = static_cast<std::uint64_t>(std::floor(34.0L * base));
    if (iv.lo < 2) iv.lo = 2;
    return iv;
}

bool length_supports_partition(std::int64_t k, double delta, std::uint64_t m) {
    if (m < 2) return false;
    const long double lg = log2_of(m);
    return static_cast<long double>(m) >= 34.0L * static_cast<long double>(k) / delta * lg * lg;
}

std::vector<std::uint64_t> sieve_range(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> out;
    if (hi < lo || hi < 2) return out;
    if (lo < 2) lo = 2;
    std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi))) + 1;
    std::vector<bool> small(root + 1, true);
    std::vector<std::uint64_t> base;
    for (std::uint64_t p = 2; p <= root; ++p) {
        if (!small[p]) continue;
        base.push_back(p);
        for (std::uint64_t q = p * p; q <= root; q += p) small[q] = false;
    }
    std::vector<bool> seg(hi - lo + 1, true);
    for (std::uint64_t p : base) {
        std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
        for (std::uint64_t q = start; q <= hi; q += p) seg[q - lo] = false;
    }
    for (std::uint64_t v = lo; v <= hi; ++v)
        if (seg[v - lo] && v >= 2) out.push_back(v);
    return out;
}

PrimeSampler::PrimeSampler(std::int64_t k, double delta, std::uint64_t m, std::uint64_t seed)
    : interval_(sampling_interval(k, delta, m)),
      seed_(seed),
      fallback_(!length_supports_partition(k, delta, m)) {
    if (!interval_.empty()) primes_ = sieve_range(interval_.lo, interval_.hi);
}

PrimeSampler::PrimeSampler(PrimeInterval interval, std::uint64_t seed)
    : interval_(interval), seed_(seed), fallback_(false) {
    if (!interval_.empty()) primes_ = sieve_range(interval_.lo, interval_.hi);
}

std::vector<std::uint64_t> PrimeSampler::sample(std::size_t count, std::uint64_t draw_index) const {
    if (primes_.empty())
        throw ConfigError("PrimeSampler: interval contains no prime");
    std::mt19937_64 rng(detail::mix64(seed_, 0x7072696d65ull + draw_index));
    std::uniform_int_distribution<std::size_t> pick(0, primes_.size() - 1);
    std::vector<std::uint64_t> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(primes_[pick(rng)]);
    return out;
}

}  // namespace hamstream
