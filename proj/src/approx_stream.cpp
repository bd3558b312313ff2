#include "hamstream/approx_stream.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "hamstream/partition.hpp"

namespace hamstream {

ApproxStream::ApproxStream(const SymbolSeq& pattern, std::int64_t k, double epsilon,
                           std::uint64_t seed, WorkMeter* meter, Options options)
    : m_(pattern.size()),
      k_(k),
      epsilon_(epsilon),
      record_streams_(options.record_streams),
      kr_(detail::mix64(seed, 0x617070726f78ull)),
      meter_(meter) {
    if (m_ == 0) throw InputError("ApproxStream: empty pattern");
    if (!(epsilon > 0.0) || epsilon > 0.5)
        throw InputError("ApproxStream: epsilon must lie in (0, 1/2]");
    if (k < 0) throw InputError("ApproxStream: negative k");
    // Below 1/(2k) the approximation is already exact, so clamp there.
    double eps_eff = epsilon;
    if (k >= 1 && eps_eff < 1.0 / (2.0 * static_cast<double>(k)))
        eps_eff = 1.0 / (2.0 * static_cast<double>(k));
    delta_ = eps_eff / 3.0;

    PrimeSampler sampler(options.interval ? PrimeSampler(*options.interval, seed)
                                          : PrimeSampler(k, delta_, m_, seed));
    structural_ = options.force_structural.value_or(!sampler.small_m_fallback());
    if (structural_ && !sampler.interval_viable()) {
        if (options.force_structural) throw ConfigError("ApproxStream: no primes to sample");
        structural_ = false;
    }
    if (structural_ && sampler.primes().back() > m_) {
        if (options.force_structural)
            throw ConfigError("ApproxStream: sampled moduli may exceed the pattern length");
        structural_ = false;
    }

    if (!structural_) {
        std::vector<std::uint64_t> raw(pattern.begin(), pattern.end());
        direct_ = std::make_unique<DistanceTracker>(std::move(raw), delta_, m_,
                                                    detail::mix64(seed, 1), meter_);
        return;
    }

    const std::size_t count =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(log2_of(m_))));
    const auto moduli = sampler.sample(count);
    levels_.resize(moduli.size());
    for (std::size_t j = 0; j < moduli.size(); ++j) {
        Level& level = levels_[j];
        level.q = moduli[j];
        level.len_long = static_cast<std::int64_t>(subpattern_length(m_, level.q, 0));
        level.s_split = m_ % level.q == 0 ? 0 : level.q - m_ % level.q;

        const auto parts = partition(pattern, level.q);
        for (std::size_t r = 0; r < level.q; ++r) {
            const std::uint64_t id = kr_.hash(SymbolSpan(parts[r]));
            if (r < level.q - level.s_split) {
                level.phi1.push_back(id);
                level.dict_long.insert(id);
            } else {
                level.phi2.push_back(id);
                level.dict_short.insert(id);
            }
        }
        level.est1 = std::make_unique<DistanceTracker>(level.phi1, delta_, m_,
                                                       detail::mix64(seed, 2 * j + 2), meter_);
        if (level.s_split > 0) {
            level.est2 = std::make_unique<DistanceTracker>(level.phi2, delta_, m_,
                                                           detail::mix64(seed, 2 * j + 3), meter_);
            level.est2_ring.assign(level.q - level.s_split + 1, -1.0);
        }
        static_tuples_ += level.phi1.size() + level.phi2.size() + level.est2_ring.size();
        if (level.est1) static_tuples_ += level.est1->live_state_census();
        if (level.est2) static_tuples_ += level.est2->live_state_census();
    }
}

std::optional<AlignmentOutput> ApproxStream::emit(std::int64_t i, double statistic) const {
    if (statistic > (1.0 + delta_) * static_cast<double>(k_)) return AlignmentOutput::no(i);
    const auto value = static_cast<std::int64_t>(std::floor(statistic / (1.0 - delta_)));
    return AlignmentOutput::approx(i, value);
}

std::optional<AlignmentOutput> ApproxStream::push(Symbol symbol) {
    const std::int64_t i = next_++;

    if (!structural_) {
        const auto e = direct_->push(symbol);
        if (i + 1 < static_cast<std::int64_t>(m_)) return std::nullopt;
        assert(e.has_value());
        return emit(i, *e);
    }

    double best = -1.0;
    for (Level& level : levels_) {
        const std::uint32_t rr =
            static_cast<std::uint32_t>(i % static_cast<std::int64_t>(level.q));
        SubstreamState& st = level.states[rr];
        if (st.ring.empty()) {
            st.ring.assign(static_cast<std::size_t>(level.len_long) + 2, 0);
            st.sf_long = SlidingFingerprint(kr_, static_cast<std::uint64_t>(level.len_long));
            if (level.s_split > 0 && level.len_long > 1)
                st.sf_short = SlidingFingerprint(kr_, static_cast<std::uint64_t>(level.len_long - 1));
            dynamic_tuples_ += st.ring.size() + 2;
        }
        const std::int64_t t = i / static_cast<std::int64_t>(level.q);
        const std::int64_t ring = static_cast<std::int64_t>(st.ring.size());
        st.ring[static_cast<std::size_t>(t % ring)] = symbol;
        ++st.count;
        auto outgoing = [&](std::int64_t back) {
            return st.ring[static_cast<std::size_t>((t - back) % ring)];
        };
        st.sf_long.feed(kr_, symbol, st.sf_long.full() ? outgoing(level.len_long) : 0);
        if (meter_) ++meter_->matcher_steps;

        std::uint64_t c1 = kNoMatch;
        if (st.sf_long.full() && level.dict_long.count(st.sf_long.value())) c1 = st.sf_long.value();
        std::uint64_t c2 = kNoMatch;
        if (level.s_split > 0) {
            if (level.len_long > 1) {
                st.sf_short.feed(kr_, symbol, st.sf_short.full() ? outgoing(level.len_long - 1) : 0);
                if (meter_) ++meter_->matcher_steps;
                if (st.sf_short.full() && level.dict_short.count(st.sf_short.value()))
                    c2 = st.sf_short.value();
            }
            // len_long == 1 would make the short subpatterns empty; the
            // sampler guarantees moduli at most m, so this cannot happen.
            assert(level.len_long > 1);
        }
        if (record_streams_) {
            level.c1.push_back(c1);
            if (level.s_split > 0) level.c2.push_back(c2);
        }

        const auto e1 = level.est1->push(c1);
        if (level.s_split > 0) {
            const auto e2 = level.est2->push(c2);
            level.est2_ring[static_cast<std::size_t>(
                i % static_cast<std::int64_t>(level.est2_ring.size()))] = e2.value_or(-1.0);
        }

        if (i + 1 < static_cast<std::int64_t>(m_)) continue;
        assert(e1.has_value());
        double mu = *e1;
        if (level.s_split > 0) {
            const std::int64_t lag = static_cast<std::int64_t>(level.q - level.s_split);
            const double e2_at = level.est2_ring[static_cast<std::size_t>(
                (i - lag) % static_cast<std::int64_t>(level.est2_ring.size()))];
            assert(e2_at >= 0.0);
            mu += e2_at;
        }
        best = std::max(best, mu);
    }

    if (i + 1 < static_cast<std::int64_t>(m_)) return std::nullopt;
    return emit(i, best);
}

std::size_t ApproxStream::live_state_census() const {
    std::size_t tuples = static_tuples_ + dynamic_tuples_;
    if (direct_) tuples += direct_->live_state_census();
    return tuples;
}

}  // namespace hamstream
