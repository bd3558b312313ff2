#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hamstream/core.hpp"

namespace hamstream {

/// A run inside one residue-class list: the class position where it starts
/// and its symbol. Starts are strictly increasing; adjacent runs differ.
struct Run {
    std::int64_t start = 0;
    Symbol symbol = 0;
    bool operator==(const Run&) const = default;
};

/// (symbol, length) form used for whole strings and engine patterns.
using RunLengthList = std::vector<std::pair<Symbol, std::int64_t>>;

RunLengthList rle_encode(SymbolSpan s);
SymbolSeq rle_decode(const RunLengthList& runs);

/// The ell-run-length encoding: one run list per residue class r in
/// [0, ell-1], list r holding the runs of the subsequence S[r], S[r+ell], ...
/// (run starts are indices within that subsequence).
struct ModularRle {
    std::size_t modulus = 1;
    std::size_t length = 0;
    std::vector<std::vector<Run>> lists;

    std::size_t total_runs() const {
        std::size_t t = 0;
        for (const auto& l : lists) t += l.size();
        return t;
    }
    /// Runs of class r as (symbol, length) pairs.
    RunLengthList class_runs(std::size_t r) const;
};

ModularRle rle_encode_mod(SymbolSpan s, std::size_t ell);
SymbolSeq rle_decode_mod(const ModularRle& enc);

}  // namespace hamstream
