#pragma once

#include <cstdint>
#include <vector>

#include "hamstream/core.hpp"

namespace hamstream {

/// Cyclic partition: result[r][t] = S[t*q + r]. The q parts are the
/// subsequences of positions with remainder r modulo q; lengths differ by
/// at most one across r.
inline std::vector<SymbolSeq> partition(SymbolSpan s, std::size_t q) {
    if (q == 0) throw InputError("partition: modulus must be positive");
    std::vector<SymbolSeq> parts(q);
    for (std::size_t r = 0; r < q; ++r)
        if (s.size() > r) parts[r].reserve((s.size() - r - 1) / q + 1);
    for (std::size_t j = 0; j < s.size(); ++j) parts[j % q].push_back(s[j]);
    return parts;
}

/// Inverse of partition.
inline SymbolSeq interleave(const std::vector<SymbolSeq>& parts) {
    const std::size_t q = parts.size();
    std::size_t total = 0;
    for (const auto& p : parts) total += p.size();
    SymbolSeq s(total);
    for (std::size_t r = 0; r < q; ++r)
        for (std::size_t t = 0; t < parts[r].size(); ++t) s[t * q + r] = parts[r][t];
    return s;
}

/// Number of positions j < m with j mod q == r.
inline std::size_t subpattern_length(std::size_t m, std::size_t q, std::size_t r) {
    return r < m ? (m - r - 1) / q + 1 : 0;
}

/// The unique substream residue r' such that, at window end i, the positions
/// of the r-th subpattern land on the latest suffix of T^{q,r'}:
/// r' = (r + i - m + 1) mod q.
inline std::size_t substream_index(std::size_t q, std::size_t r, std::int64_t i, std::size_t m) {
    const std::int64_t w0 = i - static_cast<std::int64_t>(m) + 1;
    std::int64_t v = (static_cast<std::int64_t>(r) + w0) % static_cast<std::int64_t>(q);
    if (v < 0) v += static_cast<std::int64_t>(q);
    return static_cast<std::size_t>(v);
}

}  // namespace hamstream
