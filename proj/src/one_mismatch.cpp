#include "hamstream/one_mismatch.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>

#include "hamstream/partition.hpp"

namespace hamstream {

std::uint64_t crt_recover(std::span<const std::pair<std::uint64_t, std::uint64_t>> residues,
                          std::uint64_t bound) {
    if (residues.empty()) throw InputError("crt_recover: no residues");
    unsigned __int128 product = 1;
    for (std::size_t a = 0; a < residues.size(); ++a) {
        const auto [rem, mod] = residues[a];
        if (mod == 0 || rem >= mod) throw InputError("crt_recover: bad residue pair");
        for (std::size_t b = 0; b < a; ++b)
            if (std::gcd(mod, residues[b].second) != 1)
                throw InputError("crt_recover: moduli are not pairwise coprime");
        product *= mod;
    }
    if (product < bound) throw InputError("crt_recover: moduli product below bound");

    // Incremental reconstruction: x is the solution modulo the moduli so far.
    std::uint64_t x = residues[0].first;
    std::uint64_t m_all = residues[0].second;
    for (std::size_t a = 1; a < residues.size(); ++a) {
        const auto [rem, mod] = residues[a];
        std::int64_t t0 = 0, t1 = 1;  // extended gcd for m_all^{-1} mod mod
        std::int64_t r0 = static_cast<std::int64_t>(mod), r1 = static_cast<std::int64_t>(m_all % mod);
        while (r1 != 0) {
            const std::int64_t qt = r0 / r1;
            std::int64_t tmp = r0 - qt * r1;
            r0 = r1;
            r1 = tmp;
            tmp = t0 - qt * t1;
            t0 = t1;
            t1 = tmp;
        }
        std::int64_t inv_m = t0 % static_cast<std::int64_t>(mod);
        if (inv_m < 0) inv_m += static_cast<std::int64_t>(mod);
        const std::uint64_t diff = (rem + mod - x % mod) % mod;
        const std::uint64_t t = diff * static_cast<std::uint64_t>(inv_m) % mod;
        x += m_all * t;
        m_all *= mod;
    }
    if (x >= bound)
        throw IntegrityError("crt_recover: residues point outside the bound");
    return x;
}

OneMismatchIndex::OneMismatchIndex(const SymbolSeq& pattern, std::int64_t k, std::uint64_t seed,
                                   WorkMeter* meter, Options options)
    : pattern_(pattern), k_(k), kr_(detail::mix64(seed, 0x316d69736dull)), meter_(meter) {
    if (pattern_.empty()) throw InputError("OneMismatchIndex: empty pattern");
    if (k < 0) throw InputError("OneMismatchIndex: negative k");

    PrimeSampler sampler(options.first_level_interval
                             ? PrimeSampler(*options.first_level_interval, seed)
                             : PrimeSampler(k, 1.0, pattern_.size(), seed));
    const bool forced = options.force_structural.has_value();
    structural_ = options.force_structural.value_or(!sampler.small_m_fallback());
    if (structural_ && !sampler.interval_viable()) {
        if (forced) throw ConfigError("OneMismatchIndex: sampling interval holds no prime");
        structural_ = false;
    }

    window_.assign(pattern_.size(), 0);
    if (structural_) {
        const std::size_t count =
            std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(log2_of(pattern_.size()))));
        moduli_ = sampler.sample(count);
        build_structural(seed, options.first_level_interval, forced);
    }
}

void OneMismatchIndex::build_structural(std::uint64_t, std::optional<PrimeInterval>, bool) {
    const std::size_t m = pattern_.size();

    // Small primes for the second-level split; extend past 3 log m until the
    // product covers every local index the recovery may need.
    std::uint64_t lo = std::max<std::uint64_t>(2, static_cast<std::uint64_t>(log2_of(m)));
    std::uint64_t hi = std::max<std::uint64_t>(3, static_cast<std::uint64_t>(3 * log2_of(m)));
    for (;;) {
        piece_primes_ = sieve_range(lo, hi);
        unsigned __int128 product = 1;
        bool enough = false;
        for (std::uint64_t p : piece_primes_) {
            product *= p;
            if (product >= m) {
                enough = true;
                break;
            }
        }
        if (enough || piece_primes_.size() > 64) break;
        hi = hi * 2 + 1;
    }
    if (piece_primes_.empty())
        throw ConfigError("OneMismatchIndex: no second-level primes available");
    {
        unsigned __int128 product = 1;
        std::size_t keep = 0;
        while (keep < piece_primes_.size() && product < m) product *= piece_primes_[keep++];
        if (product < m) throw ConfigError("OneMismatchIndex: second-level product below m");
        piece_primes_.resize(keep);
    }
    const std::uint64_t p_max = piece_primes_.back();

    levels_.resize(moduli_.size());
    for (std::size_t j = 0; j < moduli_.size(); ++j) {
        Level& level = levels_[j];
        level.q = moduli_[j];
        level.len_long = static_cast<std::int64_t>(subpattern_length(m, level.q, 0));
        level.has_short = (m % level.q) != 0 && level.q < m;
        level.ring_size = static_cast<std::size_t>(level.len_long) + p_max *
                              (level.len_long > 1 ? 2 : 1) + 4;

        const std::size_t sub_count = std::min<std::size_t>(level.q, m);
        level.subs.resize(sub_count);
        for (std::size_t r = 0; r < sub_count; ++r) {
            SymbolSeq part;
            for (std::size_t x = r; x < m; x += level.q) part.push_back(pattern_[x]);
            SubpatternInfo& info = level.subs[r];
            info.len = static_cast<std::int64_t>(part.size());
            info.fp = kr_.hash(SymbolSpan(part));
            if (info.len <= 1) continue;  // a single symbol needs no second level
            info.pieces.resize(piece_primes_.size());
            for (std::size_t pi = 0; pi < piece_primes_.size(); ++pi) {
                const std::uint64_t p = piece_primes_[pi];
                const std::size_t piece_count = std::min<std::uint64_t>(p, part.size());
                info.pieces[pi].fp.resize(piece_count);
                info.pieces[pi].len.resize(piece_count);
                for (std::size_t s = 0; s < piece_count; ++s) {
                    SymbolSeq piece;
                    for (std::size_t x = s; x < part.size(); x += p) piece.push_back(part[x]);
                    info.pieces[pi].fp[s] = kr_.hash(SymbolSpan(piece));
                    info.pieces[pi].len[s] = static_cast<std::int32_t>(piece.size());
                }
            }
        }

        for (const SubpatternInfo& info : level.subs) {
            static_tuples_ += 2;
            for (const PieceSet& ps : info.pieces) static_tuples_ += 2 * ps.fp.size();
        }

        // Piece lengths that can occur for this (q, p), for both subpattern
        // lengths; cells keep one sliding fingerprint per listed length.
        level.lambda.resize(piece_primes_.size());
        if (level.len_long > 1) {
            for (std::size_t pi = 0; pi < piece_primes_.size(); ++pi) {
                const std::int64_t p = static_cast<std::int64_t>(piece_primes_[pi]);
                std::vector<std::int64_t>& ls = level.lambda[pi];
                for (std::int64_t len : {level.len_long, level.len_long - 1}) {
                    if (len < 1 || (len == level.len_long - 1 && !level.has_short)) continue;
                    for (std::int64_t s = 0; s < std::min(p, len); ++s) {
                        const std::int64_t lam = (len - 1 - s) / p + 1;
                        if (std::find(ls.begin(), ls.end(), lam) == ls.end()) ls.push_back(lam);
                    }
                }
                std::sort(ls.begin(), ls.end());
            }
        }
    }
}

void OneMismatchIndex::update(Symbol symbol) {
    const std::int64_t i = next_++;
    window_[static_cast<std::size_t>(i % static_cast<std::int64_t>(window_.size()))] = symbol;
    if (!structural_) {
        if (meter_) ++meter_->matcher_steps;
        return;
    }
    for (Level& level : levels_) {
        const std::uint32_t rr = static_cast<std::uint32_t>(i % static_cast<std::int64_t>(level.q));
        const std::int64_t t = i / static_cast<std::int64_t>(level.q);
        SubstreamState& st = level.states[rr];
        if (st.ring.empty()) {
            st.ring.assign(level.ring_size, 0);
            st.full[0] = SlidingFingerprint(kr_, static_cast<std::uint64_t>(level.len_long));
            if (level.has_short && level.len_long > 1)
                st.full[1] = SlidingFingerprint(kr_, static_cast<std::uint64_t>(level.len_long - 1));
            dynamic_tuples_ += level.ring_size + 2;
        }
        const std::int64_t ring = static_cast<std::int64_t>(level.ring_size);
        st.ring[static_cast<std::size_t>(t % ring)] = symbol;
        ++st.count;

        auto outgoing = [&](std::int64_t back) {
            return st.ring[static_cast<std::size_t>((t - back) % ring)];
        };
        st.full[0].feed(kr_, symbol, st.full[0].full() ? outgoing(level.len_long) : 0);
        if (meter_) ++meter_->matcher_steps;
        if (level.has_short && level.len_long > 1) {
            st.full[1].feed(kr_, symbol, st.full[1].full() ? outgoing(level.len_long - 1) : 0);
            if (meter_) ++meter_->matcher_steps;
        }
        if (level.len_long > 1) {
            for (std::size_t pi = 0; pi < piece_primes_.size(); ++pi) {
                const std::int64_t p = static_cast<std::int64_t>(piece_primes_[pi]);
                const std::uint32_t key =
                    static_cast<std::uint32_t>(pi << 16) | static_cast<std::uint32_t>(t % p);
                Cell& cell = st.cells[key];
                auto& lambdas = level.lambda[pi];
                if (cell.sf.size() != lambdas.size()) {
                    cell.sf.clear();
                    for (std::int64_t lam : lambdas)
                        cell.sf.emplace_back(kr_, static_cast<std::uint64_t>(lam));
                    dynamic_tuples_ += 2 * lambdas.size();
                }
                for (std::size_t li = 0; li < lambdas.size(); ++li) {
                    SlidingFingerprint& sf = cell.sf[li];
                    sf.feed(kr_, symbol, sf.full() ? outgoing(lambdas[li] * p) : 0);
                    if (meter_) ++meter_->matcher_steps;
                }
            }
        }
    }
}

OneMismatchResult OneMismatchIndex::classify(Level& level, std::size_t r,
                                             const SubstreamState& state) {
    const SubpatternInfo& info = level.subs[r];
    const bool is_long = info.len == level.len_long;
    const SlidingFingerprint& sf = is_long ? state.full[0] : state.full[1];
    assert(sf.window() == static_cast<std::uint64_t>(info.len) && sf.full());
    if (meter_) ++meter_->query_steps;
    if (sf.value() == info.fp) return {OneMismatchKind::ExactMatch, 0};

    if (info.len == 1) {
        // Single-position subpattern: the mismatch can only be position 0.
        return {OneMismatchKind::One, 0};
    }

    const std::int64_t t0 = state.count - info.len;  // window start in the substream
    std::vector<std::pair<std::uint64_t, std::uint64_t>> residues;
    residues.reserve(piece_primes_.size());
    for (std::size_t pi = 0; pi < piece_primes_.size(); ++pi) {
        const std::int64_t p = static_cast<std::int64_t>(piece_primes_[pi]);
        const std::size_t piece_count = info.pieces[pi].fp.size();
        int bad = 0;
        std::int64_t bad_offset = -1;
        for (std::size_t s = 0; s < piece_count; ++s) {
            if (meter_) ++meter_->query_steps;
            const std::uint32_t key = static_cast<std::uint32_t>(pi << 16) |
                                      static_cast<std::uint32_t>((t0 + static_cast<std::int64_t>(s)) % p);
            const auto it = state.cells.find(key);
            if (it == state.cells.end())
                throw IntegrityError("OneMismatchIndex: missing substream cell");
            const std::int64_t lam = info.pieces[pi].len[s];
            const auto& lambdas = level.lambda[pi];
            const std::size_t li = static_cast<std::size_t>(
                std::find(lambdas.begin(), lambdas.end(), lam) - lambdas.begin());
            const SlidingFingerprint& psf = it->second.sf.at(li);
            assert(psf.absorbed() >= static_cast<std::uint64_t>(lam));
            if (psf.value() != info.pieces[pi].fp[s]) {
                ++bad;
                bad_offset = static_cast<std::int64_t>(s);
                if (bad > 1) break;
            }
        }
        if (bad == 0) {
            // Every piece matches although the whole subpattern does not:
            // a fingerprint collision somewhere. Report Many; the census
            // simply skips this subpattern.
            return {OneMismatchKind::Many, 0};
        }
        if (bad > 1) return {OneMismatchKind::Many, 0};
        residues.emplace_back(static_cast<std::uint64_t>(bad_offset), piece_primes_[pi]);
    }

    std::uint64_t local;
    try {
        local = crt_recover(residues, static_cast<std::uint64_t>(info.len));
    } catch (const IntegrityError&) {
        return {OneMismatchKind::Many, 0};
    }
    // Confirm the recovered position against the buffered symbols; a
    // fingerprint collision could otherwise smuggle in a matching position.
    const Symbol seen = state.ring[static_cast<std::size_t>(
        (t0 + static_cast<std::int64_t>(local)) % static_cast<std::int64_t>(level.ring_size))];
    const std::size_t global = r + static_cast<std::size_t>(local) * level.q;
    if (pattern_[global] == seen) return {OneMismatchKind::Many, 0};
    return {OneMismatchKind::One, static_cast<std::size_t>(local)};
}

std::optional<OneMismatchResult> OneMismatchIndex::one_mismatch_query(std::size_t j,
                                                                      std::size_t r) {
    if (!structural_)
        throw ConfigError("OneMismatchIndex: structural query in fallback mode");
    const std::int64_t m = static_cast<std::int64_t>(pattern_.size());
    if (next_ < m) return std::nullopt;
    Level& level = levels_.at(j);
    if (r >= level.subs.size() || level.subs[r].len == 0)
        return OneMismatchResult{OneMismatchKind::ExactMatch, 0};
    const std::int64_t i = next_ - 1;
    const std::uint32_t rr = static_cast<std::uint32_t>(
        substream_index(level.q, r, i, static_cast<std::size_t>(m)));
    const auto it = level.states.find(rr);
    if (it == level.states.end())
        throw IntegrityError("OneMismatchIndex: aligned substream never seen");
    return classify(level, r, it->second);
}

std::optional<QueryResult> OneMismatchIndex::k_mismatch_query() {
    const std::int64_t m = static_cast<std::int64_t>(pattern_.size());
    if (next_ < m) return std::nullopt;

    QueryResult res;
    if (!structural_) {
        // Stored window; jump mismatch to mismatch directly.
        for (std::int64_t x = 0; x < m; ++x) {
            if (meter_) ++meter_->query_steps;
            const std::int64_t pos = next_ - m + x;
            const Symbol c = window_[static_cast<std::size_t>(pos % m)];
            if (c != pattern_[static_cast<std::size_t>(x)]) {
                res.positions.push_back(x);
                if (static_cast<std::int64_t>(res.positions.size()) > k_) {
                    return QueryResult{true, 0, {}};
                }
            }
        }
        res.distance = static_cast<std::int64_t>(res.positions.size());
        return res;
    }

    std::vector<std::int64_t> positions;
    for (std::size_t j = 0; j < levels_.size(); ++j) {
        const Level& level = levels_[j];
        for (std::size_t r = 0; r < level.subs.size(); ++r) {
            auto verdict = one_mismatch_query(j, r);
            assert(verdict.has_value());
            if (verdict->kind != OneMismatchKind::One) continue;
            const std::int64_t global =
                static_cast<std::int64_t>(r) +
                static_cast<std::int64_t>(verdict->local_position) *
                    static_cast<std::int64_t>(level.q);
            assert(global < m);
            positions.push_back(global);
        }
    }
    std::sort(positions.begin(), positions.end());
    positions.erase(std::unique(positions.begin(), positions.end()), positions.end());
    if (static_cast<std::int64_t>(positions.size()) > k_) return QueryResult{true, 0, {}};
    res.distance = static_cast<std::int64_t>(positions.size());
    res.positions = std::move(positions);
    return res;
}

std::size_t OneMismatchIndex::live_state_census() const {
    return window_.size() + static_tuples_ + dynamic_tuples_;
}

}  // namespace hamstream
