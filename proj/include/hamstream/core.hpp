#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hamstream {

/// Symbols are integer codes; byte input is widened on ingestion.
using Symbol = std::uint32_t;
using SymbolSeq = std::vector<Symbol>;
using SymbolSpan = std::span<const Symbol>;

/// Rejected input (bad lengths, bad parameters supplied by a caller).
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A component was constructed or driven with parameters it cannot serve.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A stateful operation sequence broke its calling contract.
struct ProtocolError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Internal consistency check failed (signals a collision or a logic fault).
struct IntegrityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline SymbolSeq seq_from_bytes(std::string_view bytes) {
    SymbolSeq s;
    s.reserve(bytes.size());
    for (unsigned char c : bytes) s.push_back(static_cast<Symbol>(c));
    return s;
}

enum class Verdict : std::uint8_t { Exact, Approx, No };

/// One result per window end position i: the window is T[i-m+1, i].
struct AlignmentOutput {
    std::int64_t end_index = 0;
    Verdict verdict = Verdict::No;
    std::int64_t value = 0;  // distance for Exact, estimate for Approx

    static AlignmentOutput exact(std::int64_t i, std::int64_t d) { return {i, Verdict::Exact, d}; }
    static AlignmentOutput approx(std::int64_t i, std::int64_t x) { return {i, Verdict::Approx, x}; }
    static AlignmentOutput no(std::int64_t i) { return {i, Verdict::No, 0}; }

    bool operator==(const AlignmentOutput&) const = default;
};

std::string to_string(const AlignmentOutput& out);

/// Number of positions at which two equal-length sequences differ.
std::int64_t hamming_distance(SymbolSpan a, SymbolSpan b);

/// Brute-force ground truth: for every window end i in [m-1, n-1], Exact(d)
/// if d = Ham(P, T[i-m+1, i]) <= k, otherwise No.
std::vector<AlignmentOutput> kmismatch_oracle(SymbolSpan pattern, SymbolSpan text,
                                              std::int64_t k);

/// Smallest shift ell >= 1 with Ham(P[ell, m-1], P[0, m-1-ell]) <= x.
/// Returns m when no shift in [1, m-1] qualifies (the empty overlap at
/// ell = m has distance zero, so the function is total).
std::size_t x_period(SymbolSpan pattern, std::int64_t x);

}  // namespace hamstream
