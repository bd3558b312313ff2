#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hamstream/fingerprint.hpp"
#include "hamstream/meter.hpp"
#include "hamstream/primes.hpp"

namespace hamstream {

/// Unique x < bound with x = remainder (mod modulus) for every pair.
/// Moduli must be pairwise coprime with product at least bound; a solution
/// at or above bound signals a collision or a logic fault upstream.
std::uint64_t crt_recover(std::span<const std::pair<std::uint64_t, std::uint64_t>> residues,
                          std::uint64_t bound);

enum class OneMismatchKind : std::uint8_t { ExactMatch, One, Many };

struct OneMismatchResult {
    OneMismatchKind kind = OneMismatchKind::Many;
    std::size_t local_position = 0;  // set when kind == One
};

struct QueryResult {
    bool no = false;                      // distance exceeded k
    std::int64_t distance = 0;            // set when !no
    std::vector<std::int64_t> positions;  // sorted pattern positions, when !no
};

/// Dynamic k-mismatch queries against the latest m-length window of a
/// stream: cheap per-symbol updates, on-demand queries.
///
/// Structural mode partitions the pattern by sampled primes, then partitions
/// each subpattern again by small primes; per-substream sliding fingerprints
/// report which pieces match at the current alignment, a subpattern with
/// exactly one non-matching piece per small prime holds exactly one mismatch,
/// and its position is recovered from the piece indices by the Chinese
/// Remainder Theorem. When the pattern is too short for the sampling
/// interval the index stores the window outright and verifies directly.
class OneMismatchIndex {
public:
    struct Options {
        std::optional<PrimeInterval> first_level_interval;  // test override
        std::optional<bool> force_structural;
    };

    OneMismatchIndex(const SymbolSeq& pattern, std::int64_t k, std::uint64_t seed,
                     WorkMeter* meter = nullptr, Options options = Options());

    void update(Symbol symbol);

    bool structural() const { return structural_; }
    std::int64_t stream_length() const { return next_; }
    const std::vector<std::uint64_t>& first_level_moduli() const { return moduli_; }
    const std::vector<std::uint64_t>& piece_primes() const { return piece_primes_; }

    /// 1-mismatch verdict for subpattern (j-th modulus, residue r) at the
    /// current alignment; nullopt while fewer than m symbols were seen.
    std::optional<OneMismatchResult> one_mismatch_query(std::size_t j, std::size_t r);

    /// Exact distance and mismatch positions of the current window when the
    /// isolated-mismatch census stays within k, otherwise No.
    std::optional<QueryResult> k_mismatch_query();

    std::size_t live_state_census() const;

private:
    struct PieceSet {
        std::vector<std::uint64_t> fp;   // per local offset s' < min(p, len)
        std::vector<std::int32_t> len;
    };
    struct SubpatternInfo {
        std::uint64_t fp = 0;
        std::int64_t len = 0;
        std::vector<PieceSet> pieces;  // per piece prime, empty when len <= 1
    };
    struct Cell {
        std::vector<SlidingFingerprint> sf;  // parallel to level.lambda[p_idx]
    };
    struct SubstreamState {
        std::vector<Symbol> ring;
        std::int64_t count = 0;
        SlidingFingerprint full[2];                 // the two subpattern lengths
        std::unordered_map<std::uint32_t, Cell> cells;  // key p_idx << 16 | s''
    };
    struct Level {
        std::uint64_t q = 0;
        std::int64_t len_long = 0;  // subpattern length for r = 0
        bool has_short = false;
        std::vector<SubpatternInfo> subs;  // r < min(q, m)
        std::vector<std::vector<std::int64_t>> lambda;  // per p_idx: piece lengths kept
        std::size_t ring_size = 0;
        std::unordered_map<std::uint32_t, SubstreamState> states;
    };

    void build_structural(std::uint64_t seed, std::optional<PrimeInterval> interval_override,
                          bool forced);
    OneMismatchResult classify(Level& level, std::size_t r, const SubstreamState& state);

    SymbolSeq pattern_;
    std::int64_t k_;
    bool structural_ = false;
    KarpRabin kr_;
    std::vector<std::uint64_t> moduli_;        // sampled first-level primes
    std::vector<std::uint64_t> piece_primes_;  // shared second-level primes
    std::vector<Level> levels_;

    std::vector<Symbol> window_;  // fallback ring of the last m symbols
    std::int64_t next_ = 0;
    std::size_t static_tuples_ = 0;
    std::size_t dynamic_tuples_ = 0;
    WorkMeter* meter_;
};

}  // namespace hamstream
