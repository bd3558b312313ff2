#include "hamstream/suffix_encoder.hpp"

#include <cassert>

namespace hamstream {

SuffixEncoder::SuffixEncoder(std::size_t ell, std::size_t max_runs)
    : ell_(ell), max_runs_(max_runs), lists_(ell) {
    if (ell == 0) throw InputError("SuffixEncoder: modulus must be positive");
    if (max_runs < ell) throw ConfigError("SuffixEncoder: budget below one run per class");
}

void SuffixEncoder::push(std::int64_t pos, Symbol symbol) {
    if (end_ >= 0 && pos != end_ + 1)
        throw ProtocolError("SuffixEncoder: positions must arrive consecutively");
    if (end_ < 0) start_ = pos;
    end_ = pos;
    auto& list = lists_[static_cast<std::size_t>(pos % static_cast<std::int64_t>(ell_))];
    if (list.empty() || list.back().symbol != symbol) {
        list.push_back({pos, symbol});
        ++total_runs_;
    }
    while (total_runs_ > max_runs_) evict_leftmost();
}

void SuffixEncoder::evict_leftmost() {
    auto& list = lists_[static_cast<std::size_t>(start_ % static_cast<std::int64_t>(ell_))];
    // The front run of the start class begins exactly at the suffix start.
    assert(!list.empty() && list.front().start == start_);
    const std::int64_t step = static_cast<std::int64_t>(ell_);
    const bool single = list.size() >= 2 ? (list[1].start == start_ + step)
                                         : (start_ + step > end_);
    if (single) {
        list.pop_front();
        --total_runs_;
    } else {
        list.front().start += step;
    }
    ++start_;
}

}  // namespace hamstream
