#include "hamstream/kangaroo.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace hamstream {

namespace {
// Suffix array by prefix doubling over the combined sequence.
std::vector<std::int32_t> build_suffix_array(const std::vector<std::uint64_t>& s) {
    const std::size_t n = s.size();
    std::vector<std::int32_t> sa(n), rank(n), tmp(n);
    std::iota(sa.begin(), sa.end(), 0);
    {
        std::vector<std::uint64_t> sorted(s);
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (std::size_t i = 0; i < n; ++i)
            rank[i] = static_cast<std::int32_t>(
                std::lower_bound(sorted.begin(), sorted.end(), s[i]) - sorted.begin());
    }
    for (std::size_t h = 1;; h <<= 1) {
        auto cmp = [&](std::int32_t a, std::int32_t b) {
            if (rank[a] != rank[b]) return rank[a] < rank[b];
            const std::int32_t ra = a + h < n ? rank[a + h] : -1;
            const std::int32_t rb = b + h < n ? rank[b + h] : -1;
            return ra < rb;
        };
        std::sort(sa.begin(), sa.end(), cmp);
        tmp[sa[0]] = 0;
        for (std::size_t i = 1; i < n; ++i)
            tmp[sa[i]] = tmp[sa[i - 1]] + (cmp(sa[i - 1], sa[i]) ? 1 : 0);
        rank = tmp;
        if (rank[sa[n - 1]] == static_cast<std::int32_t>(n) - 1) break;
    }
    return sa;
}
}  // namespace

SuffixLcpIndex::SuffixLcpIndex(SymbolSpan pattern, SymbolSpan text)
    : m_(pattern.size()), n_(text.size()) {
    std::vector<std::uint64_t> s;
    s.reserve(m_ + n_ + 1);
    for (Symbol c : pattern) s.push_back(c);
    s.push_back(1ull << 33);  // separator above the symbol range
    for (Symbol c : text) s.push_back(c);
    const std::size_t n = s.size();

    const auto sa = build_suffix_array(s);
    rank_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) rank_[sa[i]] = static_cast<std::int32_t>(i);

    // Kasai
    lcp_.assign(n, 0);
    std::size_t h = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (rank_[i] == 0) {
            h = 0;
            continue;
        }
        const std::size_t j = static_cast<std::size_t>(sa[rank_[i] - 1]);
        while (i + h < n && j + h < n && s[i + h] == s[j + h]) ++h;
        lcp_[rank_[i]] = static_cast<std::int32_t>(h);
        if (h) --h;
    }

    log2_.assign(n + 1, 0);
    for (std::size_t v = 2; v <= n; ++v) log2_[v] = log2_[v / 2] + 1;
    const std::size_t levels = static_cast<std::size_t>(log2_[n]) + 1;
    sparse_.assign(levels, lcp_);
    for (std::size_t lv = 1; lv < levels; ++lv)
        for (std::size_t i = 0; i + (1u << lv) <= n; ++i)
            sparse_[lv][i] = std::min(sparse_[lv - 1][i], sparse_[lv - 1][i + (1u << (lv - 1))]);
}

std::size_t SuffixLcpIndex::lcp_positions(std::size_t a, std::size_t b) const {
    if (a == b) return rank_.size() - a;
    std::size_t ra = static_cast<std::size_t>(rank_[a]);
    std::size_t rb = static_cast<std::size_t>(rank_[b]);
    if (ra > rb) std::swap(ra, rb);
    const std::size_t lv = static_cast<std::size_t>(log2_[rb - ra]);
    return static_cast<std::size_t>(
        std::min(sparse_[lv][ra + 1], sparse_[lv][rb - (1u << lv) + 1]));
}

std::size_t SuffixLcpIndex::lcp(std::size_t pattern_offset, std::size_t text_offset) const {
    assert(pattern_offset <= m_ && text_offset <= n_);
    if (pattern_offset == m_ || text_offset == n_) return 0;
    return lcp_positions(pattern_offset, m_ + 1 + text_offset);
}

AlignmentOutput kangaroo_verify(const SuffixLcpIndex& index, std::int64_t end_index,
                                std::int64_t k, WorkMeter* meter) {
    const std::int64_t m = static_cast<std::int64_t>(index.pattern_length());
    const std::int64_t n = static_cast<std::int64_t>(index.text_length());
    if (end_index < m - 1 || end_index >= n)
        throw InputError("kangaroo_verify: end index out of range");
    const std::int64_t w0 = end_index - m + 1;
    std::int64_t pos = 0, mismatches = 0;
    while (pos < m) {
        if (meter) ++meter->verifier_probes;
        const std::int64_t l = std::min<std::int64_t>(
            static_cast<std::int64_t>(index.lcp(static_cast<std::size_t>(pos),
                                                static_cast<std::size_t>(w0 + pos))),
            m - pos);
        pos += l;
        if (pos >= m) break;
        if (++mismatches > k) return AlignmentOutput::no(end_index);
        ++pos;
    }
    return AlignmentOutput::exact(end_index, mismatches);
}

BufferedVerifier::BufferedVerifier(SymbolSeq pattern, std::int64_t k, std::uint64_t seed,
                                   WorkMeter* meter)
    : pattern_(std::move(pattern)), k_(k), kr_(detail::mix64(seed, 0x6c6370ull)), meter_(meter) {
    const std::size_t m = pattern_.size();
    pattern_prefix_.assign(m + 1, 0);
    pow_.assign(m + 2, 1);
    for (std::size_t j = 0; j < m; ++j)
        pattern_prefix_[j + 1] = kr_.append(pattern_prefix_[j], pattern_[j]);
    for (std::size_t j = 1; j < pow_.size(); ++j) pow_[j] = KarpRabin::mul(pow_[j - 1], kr_.base());
    ring_ = m + 2;
    symbols_.assign(ring_, 0);
    hashes_.assign(ring_, 0);
}

std::uint64_t BufferedVerifier::pattern_hash(std::size_t from, std::size_t len) const {
    return KarpRabin::sub(pattern_prefix_[from + len],
                          KarpRabin::mul(pattern_prefix_[from], pow_[len]));
}

std::uint64_t BufferedVerifier::text_hash(std::int64_t from, std::size_t len) const {
    const std::uint64_t hi = hashes_[static_cast<std::size_t>((from + static_cast<std::int64_t>(len) - 1) % static_cast<std::int64_t>(ring_))];
    const std::uint64_t lo = from == 0 ? 0 : hashes_[static_cast<std::size_t>((from - 1) % static_cast<std::int64_t>(ring_))];
    return KarpRabin::sub(hi, KarpRabin::mul(lo, pow_[len]));
}

std::size_t BufferedVerifier::lcp(std::size_t pattern_offset, std::int64_t text_pos,
                                  std::size_t max_len) const {
    std::size_t lo = 0, hi = max_len;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo + 1) / 2;
        if (pattern_hash(pattern_offset, mid) == text_hash(text_pos, mid)) lo = mid;
        else hi = mid - 1;
    }
    return lo;
}

std::optional<AlignmentOutput> BufferedVerifier::push(Symbol symbol) {
    const std::int64_t i = next_++;
    const std::size_t slot = static_cast<std::size_t>(i % static_cast<std::int64_t>(ring_));
    const std::uint64_t prev =
        i == 0 ? 0 : hashes_[static_cast<std::size_t>((i - 1) % static_cast<std::int64_t>(ring_))];
    symbols_[slot] = symbol;
    hashes_[slot] = kr_.append(prev, symbol);

    const std::int64_t m = static_cast<std::int64_t>(pattern_.size());
    if (m == 0) return AlignmentOutput::exact(i, 0);
    if (i < m - 1) return std::nullopt;
    const std::int64_t w0 = i - m + 1;
    std::int64_t pos = 0, mismatches = 0;
    while (pos < m) {
        if (meter_) ++meter_->verifier_probes;
        pos += static_cast<std::int64_t>(
            lcp(static_cast<std::size_t>(pos), w0 + pos, static_cast<std::size_t>(m - pos)));
        if (pos >= m) break;
        if (++mismatches > k_) return AlignmentOutput::no(i);
        ++pos;
    }
    return AlignmentOutput::exact(i, mismatches);
}

}  // namespace hamstream
