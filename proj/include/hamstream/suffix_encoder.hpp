#pragma once

#include <cstdint>
#include <deque>
#include <vector>

#include "hamstream/rle.hpp"

namespace hamstream {

/// Maintains the modular run-length encoding of the longest suffix of the
/// pushed text whose total run count stays within a budget. One list of
/// (start position, symbol) tuples per residue class, with global text
/// positions. Pushing extends on the right; evictions on the left restore
/// the budget and keep the suffix maximal.
class SuffixEncoder {
public:
    SuffixEncoder(std::size_t ell, std::size_t max_runs);

    void push(std::int64_t pos, Symbol symbol);

    std::size_t modulus() const { return ell_; }
    std::size_t total_runs() const { return total_runs_; }
    std::int64_t start() const { return start_; }
    std::int64_t end() const { return end_; }
    std::size_t length() const {
        return end_ < start_ ? 0 : static_cast<std::size_t>(end_ - start_ + 1);
    }
    const std::deque<Run>& class_list(std::size_t c) const { return lists_.at(c); }

    std::size_t live_tuples() const { return total_runs_; }

private:
    void evict_leftmost();

    std::size_t ell_;
    std::size_t max_runs_;
    std::vector<std::deque<Run>> lists_;
    std::size_t total_runs_ = 0;
    std::int64_t start_ = 0;
    std::int64_t end_ = -1;
};

}  // namespace hamstream
