#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hamstream/fingerprint.hpp"
#include "hamstream/meter.hpp"

namespace hamstream {

/// Suffix array + LCP array + sparse-table minima over the combined sequence
/// pattern # text, giving exact constant-time longest-common-prefix queries
/// between any pattern suffix and any text suffix. Deterministic.
class SuffixLcpIndex {
public:
    SuffixLcpIndex(SymbolSpan pattern, SymbolSpan text);

    std::size_t pattern_length() const { return m_; }
    std::size_t text_length() const { return n_; }

    /// Length of the longest common prefix of pattern[p..] and text[t..].
    std::size_t lcp(std::size_t pattern_offset, std::size_t text_offset) const;

private:
    std::size_t lcp_positions(std::size_t a, std::size_t b) const;

    std::size_t m_, n_;
    std::vector<std::int32_t> rank_;
    std::vector<std::int32_t> lcp_;
    std::vector<std::vector<std::int32_t>> sparse_;
    std::vector<std::int32_t> log2_;
};

/// Mismatch-to-mismatch verification: returns the exact distance of the
/// window ending at end_index when it is at most k, otherwise No, using at
/// most k+1 LCP probes.
AlignmentOutput kangaroo_verify(const SuffixLcpIndex& index, std::int64_t end_index,
                                std::int64_t k, WorkMeter* meter = nullptr);

/// Streaming counterpart over a bounded window of recent text: rolling
/// prefix hashes support LCP probes by binary search on hash equality.
/// Randomised (hash collisions), seeded, linear space in the pattern length.
class BufferedVerifier {
public:
    BufferedVerifier(SymbolSeq pattern, std::int64_t k, std::uint64_t seed,
                     WorkMeter* meter = nullptr);

    /// Feed the next text symbol; once a full window exists, reports the
    /// distance of the window ending at it (Exact if <= k, else No).
    std::optional<AlignmentOutput> push(Symbol symbol);

    std::size_t live_state_census() const { return symbols_.size() + hashes_.size(); }

private:
    std::size_t lcp(std::size_t pattern_offset, std::int64_t text_pos, std::size_t max_len) const;
    std::uint64_t text_hash(std::int64_t from, std::size_t len) const;
    std::uint64_t pattern_hash(std::size_t from, std::size_t len) const;

    SymbolSeq pattern_;
    std::int64_t k_;
    KarpRabin kr_;
    std::vector<std::uint64_t> pattern_prefix_;
    std::vector<std::uint64_t> pow_;
    std::size_t ring_ = 0;
    std::vector<Symbol> symbols_;
    std::vector<std::uint64_t> hashes_;
    std::int64_t next_ = 0;
    WorkMeter* meter_;
};

}  // namespace hamstream
