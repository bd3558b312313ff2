#include "hamstream/rle_engine.hpp"

#include <string>

namespace hamstream {

RleEngine::RleEngine(const RunLengthList& pattern_runs, WorkMeter* meter) : meter_(meter) {
    if (pattern_runs.empty()) throw ConfigError("RleEngine: empty pattern");
    std::int64_t col = 0;
    for (std::size_t b = 0; b < pattern_runs.size(); ++b) {
        const auto& [sym, len] = pattern_runs[b];
        if (len <= 0) throw InputError("RleEngine: run length must be positive");
        if (b > 0 && pattern_runs[b - 1].first == sym)
            throw InputError("RleEngine: adjacent pattern runs carry equal symbols");
        bands_.push_back({col, col + len - 1, sym});
        col += len;
    }
    pattern_length_ = col;
    lanes_.resize(2 * bands_.size());
}

void RleEngine::enqueue(std::uint32_t lane, std::int64_t pos, std::int64_t change) {
    if (lanes_[lane].empty()) heads_.push({pos, lane});
    else ++pending_;
    lanes_[lane].push_back({pos, change});
    if (meter_) ++meter_->engine_corner_pushes;
}

DiffOutput RleEngine::new_run(std::int64_t i, Symbol symbol) {
    if (has_run_) {
        if (i <= last_run_pos_)
            throw ProtocolError("RleEngine::new_run: positions must strictly increase");
        if (symbol == last_run_symbol_)
            throw ProtocolError("RleEngine::new_run: symbol equals previous run's symbol");
    }
    if (started_ && i <= cur_)
        throw ProtocolError("RleEngine::new_run: run starts behind the sweep diagonal");

    // A run boundary at text position i changes each band's mismatch value
    // from v_old (against the closed run) to v_new (against the opened one).
    // Only bands whose value flips contribute slope changes:
    //   +dv when the diagonal reaches the band's right edge at row i,
    //   -dv one past its left edge.
    for (std::size_t b = 0; b < bands_.size(); ++b) {
        const Band& band = bands_[b];
        const std::int64_t v_old = has_run_ ? (band.symbol != last_run_symbol_) : 0;
        const std::int64_t v_new = (band.symbol != symbol);
        const std::int64_t dv = v_new - v_old;
        if (dv == 0) continue;
        enqueue(static_cast<std::uint32_t>(2 * b), i + pattern_length_ - 1 - band.last_col, dv);
        enqueue(static_cast<std::uint32_t>(2 * b + 1), i + pattern_length_ - band.first_col, -dv);
    }
    has_run_ = true;
    last_run_pos_ = i;
    last_run_symbol_ = symbol;

    advance(i);
    if (meter_) {
        ++meter_->engine_newruns;
        ++meter_->engine_diffs;
    }
    last_op_was_new_run_ = true;
    DiffOutput out = output();
    last_istar_ = out.istar;
    return out;
}

DiffOutput RleEngine::diff(std::int64_t i) {
    if (!has_run_) throw ProtocolError("RleEngine::diff: no text announced yet");
    if (i < cur_) throw ProtocolError("RleEngine::diff: alignment behind the sweep diagonal");
    if (last_op_was_new_run_ && i == last_run_pos_)
        throw ProtocolError("RleEngine::diff: alignment already reported by NewRun at " +
                            std::to_string(i));
    if (i > last_istar_)
        throw ProtocolError("RleEngine::diff: alignment past i* without an intervening NewRun");
    advance(i);
    if (meter_) ++meter_->engine_diffs;
    last_op_was_new_run_ = false;
    DiffOutput out = output();
    last_istar_ = out.istar;
    return out;
}

void RleEngine::advance(std::int64_t target) {
    if (!started_) {
        // Nothing contributes before the first event; jump the sweep there.
        cur_ = heads_.empty() ? target : heads_.top().pos - 1;
        if (cur_ > target) cur_ = target;
        started_ = true;
    }
    while (!heads_.empty() && heads_.top().pos <= target) {
        const std::int64_t pos = heads_.top().pos;
        ham_ += delta_ * (pos - 1 - cur_);
        std::int64_t change = 0;
        while (!heads_.empty() && heads_.top().pos == pos) {
            const std::uint32_t lane = heads_.top().lane;
            heads_.pop();
            auto& dq = lanes_[lane];
            change += dq.front().change;
            dq.pop_front();
            if (!dq.empty()) {
                heads_.push({dq.front().pos, lane});
                --pending_;
            }
        }
        delta_ += change;
        ham_ += delta_;
        cur_ = pos;
    }
    ham_ += delta_ * (target - cur_);
    cur_ = target;
}

DiffOutput RleEngine::output() const {
    return {delta_, heads_.empty() ? kNoChange : heads_.top().pos, ham_};
}

}  // namespace hamstream
