#include "hamstream/pipeline.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <unordered_map>

#include "hamstream/partition.hpp"

namespace hamstream {

namespace {

/// Exact distance profile by per-symbol position counting: every text
/// occurrence of a symbol credits the alignments that line it up with the
/// pattern's occurrences.
std::vector<std::int64_t> counting_distances(const SymbolSeq& pattern, const SymbolSeq& text) {
    const std::int64_t m = static_cast<std::int64_t>(pattern.size());
    const std::int64_t n = static_cast<std::int64_t>(text.size());
    std::unordered_map<Symbol, std::vector<std::int64_t>> where;
    for (std::int64_t p = 0; p < m; ++p) where[pattern[static_cast<std::size_t>(p)]].push_back(p);
    std::vector<std::int64_t> matches(static_cast<std::size_t>(n - m + 1), 0);
    for (std::int64_t t = 0; t < n; ++t) {
        const auto it = where.find(text[static_cast<std::size_t>(t)]);
        if (it == where.end()) continue;
        for (std::int64_t p : it->second) {
            const std::int64_t w0 = t - p;
            if (w0 >= 0 && w0 <= n - m) ++matches[static_cast<std::size_t>(w0)];
        }
    }
    std::vector<std::int64_t> dist(matches.size());
    for (std::size_t w0 = 0; w0 < matches.size(); ++w0) dist[w0] = m - matches[w0];
    return dist;
}

void account_block(RunStats* stats, const SmallPeriodMatcher& matcher, std::uint64_t ops_before) {
    if (!stats) return;
    ++stats->blocks;
    stats->aborted_blocks += matcher.aborted() ? 1 : 0;
    stats->max_block_engine_ops =
        std::max(stats->max_block_engine_ops, stats->meter.engine_ops() - ops_before);
    stats->max_engine_queue = std::max(stats->max_engine_queue, matcher.max_queue_per_pattern_run());
}

}  // namespace

std::vector<AlignmentOutput> run_offline(const SymbolSeq& pattern, const SymbolSeq& text,
                                         std::int64_t k, RunStats* stats) {
    const std::size_t m = pattern.size();
    const std::size_t n = text.size();
    if (m == 0) throw InputError("run_offline: empty pattern");
    if (m > n) throw InputError("run_offline: pattern longer than text");
    if (k < 0) throw InputError("run_offline: negative k");
    WorkMeter* meter = stats ? &stats->meter : nullptr;
    const std::size_t ell = x_period(pattern, 3 * k);

    std::vector<AlignmentOutput> out;
    out.reserve(n - m + 1);

    if (k > 0 && ell <= static_cast<std::size_t>(k)) {
        for (std::size_t start = 0; start + m <= n; start += m) {
            const std::size_t len = std::min(2 * m, n - start);
            const std::uint64_t ops_before = stats ? stats->meter.engine_ops() : 0;
            SmallPeriodMatcher matcher(pattern, k, meter);
            for (std::size_t off = 0; off < len; ++off) {
                auto o = matcher.push(text[start + off]);
                if (stats)
                    stats->max_small_period_census =
                        std::max(stats->max_small_period_census, matcher.live_state_census());
                if (!o) continue;
                if (len == 2 * m && o->end_index == static_cast<std::int64_t>(2 * m - 1))
                    continue;  // owned by the next block
                o->end_index += static_cast<std::int64_t>(start);
                out.push_back(*o);
            }
            account_block(stats, matcher, ops_before);
        }
        return out;
    }

    // Large approximate period: filter by exact counting, then re-derive
    // the distance of each survivor with LCP jumps.
    const std::vector<std::int64_t> dist = counting_distances(pattern, text);
    SuffixLcpIndex index(pattern, text);
    std::int64_t last_survivor = -static_cast<std::int64_t>(m) - 1;
    for (std::size_t w0 = 0; w0 < dist.size(); ++w0) {
        const std::int64_t i = static_cast<std::int64_t>(w0 + m - 1);
        if (2 * dist[w0] > 3 * k) {
            out.push_back(AlignmentOutput::no(i));
            continue;
        }
        // Close-by threshold occurrences must sit at least one approximate
        // period apart.
        if (last_survivor >= static_cast<std::int64_t>(m) - 1 &&
            i - last_survivor < static_cast<std::int64_t>(ell))
            throw IntegrityError("run_offline: threshold occurrences closer than the period");
        last_survivor = i;
        if (stats) {
            ++stats->filter_survivors;
            ++stats->meter.verifier_calls;
        }
        const AlignmentOutput v = kangaroo_verify(index, i, k, meter);
        if (v.verdict == Verdict::Exact && v.value != dist[w0])
            throw IntegrityError("run_offline: verifier disagrees with the counting filter");
        out.push_back(v);
    }
    return out;
}

OnlineRunner::OnlineRunner(const SymbolSeq& pattern, std::int64_t k, std::uint64_t seed,
                           RunStats* stats, WorkMeter* meter_override)
    : pattern_(pattern), k_(k), seed_(seed), stats_(stats) {
    if (pattern_.empty()) throw InputError("OnlineRunner: empty pattern");
    if (k < 0) throw InputError("OnlineRunner: negative k");
    meter_ = meter_override ? meter_override : (stats_ ? &stats_->meter : &own_meter_);
    ell_ = x_period(pattern_, 3 * k);
    small_ = k > 0 && ell_ <= static_cast<std::size_t>(k);
    if (small_) return;

    try {
        filter_ = std::make_unique<ApproxStream>(pattern_, 2 * k_, 0.5,
                                                 detail::mix64(seed, 0xf117e5ull), meter_);
    } catch (const ConfigError&) {
        filter_.reset();  // pattern too short to filter; verify everywhere
    }
    verifier_ = std::make_unique<OneMismatchIndex>(pattern_, k_, detail::mix64(seed, 0x0e51f7ull),
                                                   meter_);
}

std::optional<AlignmentOutput> OnlineRunner::push(Symbol symbol) {
    const std::int64_t i = next_++;
    const std::int64_t m = static_cast<std::int64_t>(pattern_.size());

    if (small_) {
        // Overlapping 2m blocks, each answering the m end positions it owns.
        if (i % m == 0)
            matchers_.push_back(Block{i, std::make_unique<SmallPeriodMatcher>(pattern_, k_, meter_),
                                      meter_->engine_ops()});
        std::optional<AlignmentOutput> result;
        for (Block& b : matchers_) {
            auto o = b.matcher->push(symbol);
            if (stats_)
                stats_->max_small_period_census =
                    std::max(stats_->max_small_period_census, b.matcher->live_state_census());
            if (!o) continue;
            const std::int64_t local = o->end_index;
            if (local >= m - 1 && local <= 2 * m - 2) {
                o->end_index += b.start;
                assert(!result || o->end_index != result->end_index);
                if (o->end_index == i) result = *o;
            }
        }
        if (!matchers_.empty() && i - matchers_.front().start == 2 * m - 1) {
            account_block(stats_, *matchers_.front().matcher, matchers_.front().ops_at_start);
            matchers_.pop_front();
        }
        if (i >= m - 1) assert(result.has_value());
        return result;
    }

    std::optional<AlignmentOutput> filtered;
    if (filter_) filtered = filter_->push(symbol);
    verifier_->update(symbol);
    if (i < m - 1) return std::nullopt;

    const bool survivor =
        !filter_ || (filtered && filtered->verdict == Verdict::Approx && 2 * filtered->value <= 3 * k_);
    if (!survivor) return AlignmentOutput::no(i);
    if (stats_) ++stats_->filter_survivors;
    ++meter_->verifier_calls;
    const auto q = verifier_->k_mismatch_query();
    assert(q.has_value());
    if (q->no) return AlignmentOutput::no(i);
    return AlignmentOutput::exact(i, q->distance);
}

std::size_t OnlineRunner::live_state_census() const {
    std::size_t tuples = 0;
    for (const Block& b : matchers_) tuples += b.matcher->live_state_census();
    if (filter_) tuples += filter_->live_state_census();
    if (verifier_) tuples += verifier_->live_state_census();
    return tuples;
}

std::vector<AlignmentOutput> run_online(const SymbolSeq& pattern, const SymbolSeq& text,
                                        std::int64_t k, std::uint64_t seed, RunStats* stats) {
    if (pattern.size() > text.size()) throw InputError("run_online: pattern longer than text");
    OnlineRunner runner(pattern, k, seed, stats);
    std::vector<AlignmentOutput> out;
    out.reserve(text.size() - pattern.size() + 1);
    for (Symbol c : text)
        if (auto o = runner.push(c)) out.push_back(*o);
    return out;
}

std::uint64_t default_streaming_budget(std::size_t m) {
    const double lg = std::max(2.0, log2_of(std::max<std::size_t>(m, 2)));
    return 256 + static_cast<std::uint64_t>(16.0 * lg * lg * lg);
}

StreamingRunner::StreamingRunner(const SymbolSeq& pattern, std::int64_t k, std::uint64_t seed,
                                 RunStats* stats, std::optional<std::uint64_t> budget_override)
    : m_(pattern.size()), k_(k), stats_(stats) {
    if (m_ == 0) throw InputError("StreamingRunner: empty pattern");
    if (k < 0) throw InputError("StreamingRunner: negative k");
    meter_ = stats_ ? &stats_->meter : &own_meter_;
    tail_len_ = 2 * k * k;

    if (tail_len_ == 0 || static_cast<std::int64_t>(m_) <= tail_len_) {
        direct_ = std::make_unique<BufferedVerifier>(pattern, k, detail::mix64(seed, 0xd12ec7ull),
                                                     meter_);
        return;
    }
    const std::size_t head_len = m_ - static_cast<std::size_t>(tail_len_);
    SymbolSeq head(pattern.begin(), pattern.begin() + static_cast<std::ptrdiff_t>(head_len));
    SymbolSeq tail(pattern.begin() + static_cast<std::ptrdiff_t>(head_len), pattern.end());
    tail_ = std::make_unique<BufferedVerifier>(std::move(tail), k, detail::mix64(seed, 0x7a11ull),
                                               meter_);
    head_ = std::make_unique<OnlineRunner>(head, k, detail::mix64(seed, 0x6eadull), stats_, meter_);
    head_ring_.assign(static_cast<std::size_t>(tail_len_) + 4, -2);
    budget_ = budget_override.value_or(default_streaming_budget(m_));
}

std::optional<AlignmentOutput> StreamingRunner::push(Symbol symbol) {
    const std::int64_t i = next_++;
    if (direct_) {
        auto o = direct_->push(symbol);
        if (stats_)
            stats_->max_streaming_census =
                std::max(stats_->max_streaming_census, live_state_census());
        return o;
    }

    const auto tail_out = tail_->push(symbol);
    pending_.push_back(symbol);

    // Credit this arrival's work budget (no banking beyond one arrival) and
    // run head steps while in credit. A spiky step borrows, driving the
    // balance negative; subsequent arrivals repay it while the lag buffer
    // holds the unconsumed symbols.
    tokens_ = std::min<std::int64_t>(tokens_ + static_cast<std::int64_t>(budget_),
                                     static_cast<std::int64_t>(budget_));
    while (tokens_ > 0 && !pending_.empty()) {
        const std::uint64_t before = meter_->total();
        const Symbol c = pending_.front();
        pending_.pop_front();
        const auto o = head_->push(c);
        const std::int64_t pos = head_positions_++;
        if (pos >= static_cast<std::int64_t>(m_) - tail_len_ - 1) {
            assert(o.has_value() && o->end_index == pos);
            head_ring_[static_cast<std::size_t>(pos % static_cast<std::int64_t>(head_ring_.size()))] =
                o->verdict == Verdict::Exact ? o->value : -1;
        }
        tokens_ -= static_cast<std::int64_t>(meter_->total() - before + 1);
    }
    if (static_cast<std::int64_t>(pending_.size()) > tail_len_)
        throw IntegrityError("StreamingRunner: lag exceeded its bound; budget miscalibrated");
    if (stats_) {
        stats_->max_lag = std::max(stats_->max_lag, static_cast<std::int64_t>(pending_.size()));
        stats_->max_streaming_census =
            std::max(stats_->max_streaming_census, live_state_census());
    }

    if (i < static_cast<std::int64_t>(m_) - 1) return std::nullopt;
    assert(tail_out.has_value());
    const std::int64_t head_pos = i - tail_len_;
    const std::int64_t head_val =
        head_ring_[static_cast<std::size_t>(head_pos % static_cast<std::int64_t>(head_ring_.size()))];
    if (head_val == -2)
        throw IntegrityError("StreamingRunner: head output missing despite bounded lag");
    if (head_val < 0 || tail_out->verdict != Verdict::Exact) return AlignmentOutput::no(i);
    const std::int64_t total = head_val + tail_out->value;
    return total <= k_ ? AlignmentOutput::exact(i, total) : AlignmentOutput::no(i);
}

std::size_t StreamingRunner::live_state_census() const {
    std::size_t tuples = pending_.size() + head_ring_.size();
    if (direct_) tuples += direct_->live_state_census();
    if (tail_) tuples += tail_->live_state_census();
    if (head_) tuples += head_->live_state_census();
    return tuples;
}

std::vector<AlignmentOutput> run_streaming(const SymbolSeq& pattern, const SymbolSeq& text,
                                           std::int64_t k, std::uint64_t seed, RunStats* stats,
                                           std::optional<std::uint64_t> budget) {
    if (pattern.size() > text.size()) throw InputError("run_streaming: pattern longer than text");
    StreamingRunner runner(pattern, k, seed, stats, budget);
    std::vector<AlignmentOutput> out;
    for (Symbol c : text)
        if (auto o = runner.push(c)) out.push_back(*o);
    return out;
}

std::vector<AlignmentOutput> run_variant(Variant variant, const SymbolSeq& pattern,
                                         const SymbolSeq& text, std::int64_t k, double epsilon,
                                         std::uint64_t seed, RunStats* stats) {
    switch (variant) {
        case Variant::Oracle: return kmismatch_oracle(pattern, text, k);
        case Variant::Offline: return run_offline(pattern, text, k, stats);
        case Variant::Online: return run_online(pattern, text, k, seed, stats);
        case Variant::Streaming: return run_streaming(pattern, text, k, seed, stats);
        case Variant::Approx: {
            WorkMeter* meter = stats ? &stats->meter : nullptr;
            ApproxStream approx(pattern, k, epsilon, seed, meter);
            std::vector<AlignmentOutput> out;
            for (Symbol c : text)
                if (auto o = approx.push(c)) out.push_back(*o);
            return out;
        }
    }
    throw InputError("run_variant: unknown variant");
}

}  // namespace hamstream
