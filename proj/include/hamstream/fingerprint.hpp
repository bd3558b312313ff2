#pragma once

#include <cassert>
#include <cstdint>
#include <span>

#include "hamstream/core.hpp"

namespace hamstream {

namespace detail {
/// splitmix64; used to derive independent sub-seeds and cheap symbol hashes.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}
inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) { return mix64(a ^ mix64(b)); }
}  // namespace detail

/// Polynomial hashing modulo the Mersenne prime 2^61 - 1 with a seeded base.
/// Equal sequences always hash equal; unequal same-length sequences collide
/// with probability at most length / M over the base choice.
class KarpRabin {
public:
    static constexpr std::uint64_t kModulus = (1ull << 61) - 1;

    explicit KarpRabin(std::uint64_t seed) {
        base_ = 2 + detail::mix64(seed, 0x6b61727072616269ull) % (kModulus - 3);
    }

    std::uint64_t base() const { return base_; }

    static std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
        const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
        std::uint64_t lo = static_cast<std::uint64_t>(p & kModulus);
        std::uint64_t hi = static_cast<std::uint64_t>(p >> 61);
        std::uint64_t r = lo + hi;
        if (r >= kModulus) r -= kModulus;
        return r;
    }
    static std::uint64_t add(std::uint64_t a, std::uint64_t b) {
        std::uint64_t r = a + b;
        if (r >= kModulus) r -= kModulus;
        return r;
    }
    static std::uint64_t sub(std::uint64_t a, std::uint64_t b) {
        return a >= b ? a - b : a + kModulus - b;
    }

    std::uint64_t pow_base(std::uint64_t e) const {
        std::uint64_t r = 1, b = base_;
        while (e) {
            if (e & 1) r = mul(r, b);
            b = mul(b, b);
            e >>= 1;
        }
        return r;
    }

    /// Value of the polynomial sum s[j] * base^(len-1-j); empty sequence -> 0.
    template <typename T>
    std::uint64_t hash(std::span<const T> s) const {
        std::uint64_t v = 0;
        for (const T& c : s) v = add(mul(v, base_), static_cast<std::uint64_t>(c) % kModulus);
        return v;
    }
    std::uint64_t hash(SymbolSpan s) const { return hash<Symbol>(s); }

    std::uint64_t append(std::uint64_t value, std::uint64_t symbol) const {
        return add(mul(value, base_), symbol % kModulus);
    }

private:
    std::uint64_t base_;
};

struct Fingerprint {
    std::uint64_t value = 0;
    std::uint64_t length = 0;
    bool operator==(const Fingerprint&) const = default;
};

template <typename T>
Fingerprint fingerprint(const KarpRabin& kr, std::span<const T> s) {
    return {kr.hash<T>(s), s.size()};
}

/// Constant-work sliding hash of the last `window` symbols of a stream.
/// The caller owns the symbol history and supplies the outgoing symbol.
class SlidingFingerprint {
public:
    SlidingFingerprint() = default;
    SlidingFingerprint(const KarpRabin& kr, std::uint64_t window)
        : window_(window), lead_pow_(window ? kr.pow_base(window - 1) : 1) {}

    std::uint64_t window() const { return window_; }
    std::uint64_t absorbed() const { return count_; }
    bool full() const { return count_ >= window_; }
    std::uint64_t value() const { return value_; }

    void push(const KarpRabin& kr, std::uint64_t incoming) {
        assert(count_ < window_);
        value_ = kr.append(value_, incoming);
        ++count_;
    }
    void slide(const KarpRabin& kr, std::uint64_t incoming, std::uint64_t outgoing) {
        assert(count_ >= window_);
        value_ = KarpRabin::sub(value_, KarpRabin::mul(outgoing % KarpRabin::kModulus, lead_pow_));
        value_ = kr.append(value_, incoming);
        ++count_;
    }
    /// Push or slide depending on fill state.
    void feed(const KarpRabin& kr, std::uint64_t incoming, std::uint64_t outgoing_if_full) {
        if (full()) slide(kr, incoming, outgoing_if_full);
        else push(kr, incoming);
    }

private:
    std::uint64_t window_ = 0;
    std::uint64_t lead_pow_ = 1;
    std::uint64_t value_ = 0;
    std::uint64_t count_ = 0;
};

}  // namespace hamstream
