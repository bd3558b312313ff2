#include "hamstream/small_period.hpp"

#include <cassert>

#include "hamstream/partition.hpp"

namespace hamstream {

SmallPeriodMatcher::SmallPeriodMatcher(const SymbolSeq& pattern, std::int64_t k, WorkMeter* meter)
    : m_(pattern.size()),
      k_(k),
      ell_(x_period(pattern, 3 * k)),
      encoder_(1, 1),  // re-initialised below once ell is known
      meter_(meter) {
    if (m_ == 0) throw InputError("SmallPeriodMatcher: empty pattern");
    if (k <= 0 || ell_ > static_cast<std::size_t>(k))
        throw ConfigError("SmallPeriodMatcher: pattern has no approximate period within k");

    // A mismatch can open and close a run in its residue class, so a window
    // within k mismatches of the pattern decodes to at most runs(P) + 2k
    // runs; the suffix kept through the first half must therefore extend as
    // far as any such window's prefix, i.e. carry up to 4k + 2k runs.
    encoder_ = SuffixEncoder(ell_, static_cast<std::size_t>(6 * k_));
    recent_.assign(ell_, 0);

    pattern_class_runs_.reserve(ell_);
    for (const SymbolSeq& part : partition(pattern, ell_)) {
        pattern_class_runs_.push_back(rle_encode(part));
        pattern_class_len_.push_back(static_cast<std::int64_t>(part.size()));
        pattern_runs_total_ += pattern_class_runs_.back().size();
    }
    if (pattern_runs_total_ > static_cast<std::size_t>(4 * k_))
        throw IntegrityError("SmallPeriodMatcher: pattern encoding exceeds its run bound");

    // While any window within k mismatches remains ahead, the processed
    // region is covered by the kept suffix plus one such window, so its run
    // count stays within 6k + 6k; beyond that nothing is left to find.
    run_cap_ = static_cast<std::size_t>(12 * k_);
}

std::optional<AlignmentOutput> SmallPeriodMatcher::push(Symbol symbol) {
    const std::int64_t i = pos_++;
    if (static_cast<std::size_t>(i) >= 2 * m_)
        throw ProtocolError("SmallPeriodMatcher: block longer than 2m");
    if (static_cast<std::size_t>(i) < m_) {
        encoder_.push(i, symbol);
        recent_[klass(i)] = symbol;
        if (static_cast<std::size_t>(i) + 1 < m_) return std::nullopt;
        handover();
        return output_step(i, symbol, /*announce=*/false);
    }
    return output_step(i, symbol, /*announce=*/true);
}

void SmallPeriodMatcher::handover() {
    const std::int64_t len = static_cast<std::int64_t>(encoder_.length());
    first_valid_ = 2 * static_cast<std::int64_t>(m_) - len - 1;
    total_runs_ = encoder_.total_runs();

    engines_.reserve(ell_ * ell_);
    records_.assign(ell_ * ell_, {});
    pending_.resize(ell_);
    ham_ring_.assign(ell_, 0);
    delta_ring_.assign(ell_, 0);
    change_ring_.assign(ell_, 0);

    const std::int64_t ell = static_cast<std::int64_t>(ell_);
    for (std::size_t r = 0; r < ell_; ++r) {
        for (std::size_t s = 0; s < ell_; ++s) {
            engines_.emplace_back(pattern_class_runs_[r], meter_);
            RleEngine& eng = engines_.back();

            const auto& list = encoder_.class_list(s);
            assert(!list.empty());
            DiffOutput last{};
            std::int64_t at = -1;
            for (const Run& run : list) {
                at = run.start / ell;
                last = eng.new_run(at, run.symbol);
            }
            // Bring the instance to the last in-class alignment of the block's
            // first half, servicing every change point on the way, so later
            // reads extrapolate from a serviced state.
            const std::int64_t p_last =
                static_cast<std::int64_t>(m_) - 1 -
                (static_cast<std::int64_t>(m_) - 1 - static_cast<std::int64_t>(s)) % ell;
            const std::int64_t a0 = p_last / ell;
            assert(a0 >= at);
            while (at < a0) {
                const std::int64_t next = std::min(last.istar, a0);
                last = eng.diff(next);
                at = next;
            }

            InstanceRecord& rec = records_[idx(r, s)];
            rec.cur = {a0, last.ham, last.delta};
            rec.prev = {a0 - 1, last.ham - last.delta, 0};
            rec.prev_real = false;
            rec.istar = last.istar;
            if (last.istar != RleEngine::kNoChange) pending_[s].push({last.istar, r});
        }
    }
}

void SmallPeriodMatcher::on_event(std::size_t r, std::size_t s, std::int64_t a,
                                  const DiffOutput& out, std::int64_t text_pos) {
    InstanceRecord& rec = records_[idx(r, s)];
    assert(a > rec.cur.a);
    // The engines change their difference only at serviced alignments, so the
    // value one step back must extrapolate from the stored snapshot.
    assert(out.ham - out.delta == rec.cur.ham + rec.cur.delta * (a - 1 - rec.cur.a));

    const std::int64_t d_change = out.delta - rec.cur.delta;
    if (d_change != 0) {
        // The unique output position whose class-sum consumes this term.
        const std::int64_t target =
            static_cast<std::int64_t>(m_) - 1 - static_cast<std::int64_t>(r) +
            static_cast<std::int64_t>(ell_) * (a - pattern_class_len_[r] + 1) +
            static_cast<std::int64_t>(s);
        assert(target >= text_pos && target < text_pos + static_cast<std::int64_t>(ell_));
        change_ring_[klass(target)] += d_change;
    }

    rec.prev = rec.cur;
    rec.prev_real = true;
    rec.cur = {a, out.ham, out.delta};
    rec.istar = out.istar;
    if (out.istar != RleEngine::kNoChange) pending_[s].push({out.istar, r});
}

AlignmentOutput SmallPeriodMatcher::output_step(std::int64_t i, Symbol symbol, bool announce) {
    const std::size_t s = klass(i);
    const std::int64_t target = i / static_cast<std::int64_t>(ell_);

    if (aborted_) {
        recent_[s] = symbol;
        return AlignmentOutput::no(i);
    }

    if (announce && symbol != recent_[s]) {
        if (++total_runs_ > run_cap_) {
            aborted_ = true;
            recent_[s] = symbol;
            return AlignmentOutput::no(i);
        }
        for (std::size_t r = 0; r < ell_; ++r)
            on_event(r, s, target, engines_[idx(r, s)].new_run(target, symbol), i);
    }

    MinHeap& heap = pending_[s];
    while (!heap.empty() && heap.top().first <= target) {
        const auto [istar, r] = heap.top();
        heap.pop();
        InstanceRecord& rec = records_[idx(r, s)];
        if (rec.istar != istar || rec.cur.a >= target) continue;  // superseded entry
        if (istar < target)
            throw IntegrityError("SmallPeriodMatcher: missed an engine service point");
        on_event(r, s, target, engines_[idx(r, s)].diff(target), i);
    }
    if (meter_) {
        for (const RleEngine& e : engines_) {
            const std::size_t ratio = (e.queue_size() + e.pattern_runs() - 1) / e.pattern_runs();
            max_engine_queue_ = std::max(max_engine_queue_, ratio);
        }
    }

    recent_[s] = symbol;
    if (i < first_valid_) return AlignmentOutput::no(i);

    const std::int64_t ell = static_cast<std::int64_t>(ell_);
    const std::int64_t m = static_cast<std::int64_t>(m_);
    std::int64_t ham;
    if (i < first_valid_ + ell) {
        // Direct class sum for the first ell in-region alignments.
        ham = 0;
        for (std::size_t r = 0; r < ell_; ++r) {
            const std::int64_t off = static_cast<std::int64_t>(r) + i - m + 1;
            ham += read_ham(r, static_cast<std::size_t>(off % ell),
                            off / ell + pattern_class_len_[r] - 1);
        }
        change_ring_[s] = 0;
    } else if (i < first_valid_ + 2 * ell) {
        // Seed the incremental difference for this residue of i.
        std::int64_t de = 0;
        for (std::size_t r = 0; r < ell_; ++r) {
            const std::int64_t off = static_cast<std::int64_t>(r) + i - m + 1;
            de += read_delta(r, static_cast<std::size_t>(off % ell),
                             off / ell + pattern_class_len_[r] - 1);
        }
        change_ring_[s] = 0;
        delta_ring_[s] = de;
        ham = ham_ring_[s] + de;
    } else {
        const std::int64_t de = delta_ring_[s] + change_ring_[s];
        change_ring_[s] = 0;
        delta_ring_[s] = de;
        ham = ham_ring_[s] + de;
    }
    ham_ring_[s] = ham;
    assert(ham >= 0 && ham <= m);
    return ham <= k_ ? AlignmentOutput::exact(i, ham) : AlignmentOutput::no(i);
}

std::int64_t SmallPeriodMatcher::read_ham(std::size_t r, std::size_t s, std::int64_t x) const {
    const InstanceRecord& rec = records_[idx(r, s)];
    if (x >= rec.cur.a) {
        if (x > rec.cur.a && x >= rec.istar)
            throw IntegrityError("SmallPeriodMatcher: read beyond the engine's guarantee");
        return rec.cur.ham + rec.cur.delta * (x - rec.cur.a);
    }
    if (x == rec.cur.a - 1) return rec.cur.ham - rec.cur.delta;
    if (rec.prev_real && x >= rec.prev.a)
        return rec.prev.ham + rec.prev.delta * (x - rec.prev.a);
    throw IntegrityError("SmallPeriodMatcher: distance read out of retained range");
}

std::int64_t SmallPeriodMatcher::read_delta(std::size_t r, std::size_t s, std::int64_t x) const {
    const InstanceRecord& rec = records_[idx(r, s)];
    if (x >= rec.cur.a) {
        if (x > rec.cur.a && x >= rec.istar)
            throw IntegrityError("SmallPeriodMatcher: read beyond the engine's guarantee");
        return rec.cur.delta;
    }
    if (rec.prev_real && x >= rec.prev.a) return rec.prev.delta;
    throw IntegrityError("SmallPeriodMatcher: difference read out of retained range");
}

std::size_t SmallPeriodMatcher::live_state_census() const {
    std::size_t tuples = encoder_.live_tuples() + recent_.size();
    for (const RleEngine& e : engines_)
        tuples += e.queue_size() + e.pending_events() + e.pattern_runs();
    for (const MinHeap& h : pending_) tuples += h.size();
    tuples += 4 * records_.size();  // two snapshots, i*, flag
    tuples += ham_ring_.size() + delta_ring_.size() + change_ring_.size();
    return tuples;
}

std::vector<AlignmentOutput> run_block(const SymbolSeq& pattern, SymbolSpan block,
                                       std::int64_t k, WorkMeter* meter) {
    if (block.size() < pattern.size())
        throw InputError("run_block: block shorter than the pattern");
    if (block.size() > 2 * pattern.size()) throw InputError("run_block: block longer than 2m");
    SmallPeriodMatcher matcher(pattern, k, meter);
    std::vector<AlignmentOutput> out;
    out.reserve(block.size() - pattern.size() + 1);
    for (Symbol c : block)
        if (auto o = matcher.push(c)) out.push_back(*o);
    return out;
}

}  // namespace hamstream
