#include "hamstream/core.hpp"

namespace hamstream {

std::string to_string(const AlignmentOutput& out) {
    switch (out.verdict) {
        case Verdict::Exact: return std::to_string(out.value);
        case Verdict::Approx: return "~" + std::to_string(out.value);
        default: return "No";
    }
}

std::int64_t hamming_distance(SymbolSpan a, SymbolSpan b) {
    if (a.size() != b.size())
        throw InputError("hamming_distance: length mismatch (" + std::to_string(a.size()) +
                         " vs " + std::to_string(b.size()) + ")");
    std::int64_t d = 0;
    for (std::size_t j = 0; j < a.size(); ++j) d += (a[j] != b[j]);
    return d;
}

std::vector<AlignmentOutput> kmismatch_oracle(SymbolSpan pattern, SymbolSpan text,
                                              std::int64_t k) {
    const std::size_t m = pattern.size(), n = text.size();
    if (m == 0) throw InputError("kmismatch_oracle: empty pattern");
    if (m > n) throw InputError("kmismatch_oracle: pattern longer than text");
    std::vector<AlignmentOutput> out;
    out.reserve(n - m + 1);
    for (std::size_t i = m - 1; i < n; ++i) {
        const std::int64_t d = hamming_distance(pattern, text.subspan(i - m + 1, m));
        out.push_back(d <= k ? AlignmentOutput::exact(static_cast<std::int64_t>(i), d)
                             : AlignmentOutput::no(static_cast<std::int64_t>(i)));
    }
    return out;
}

std::size_t x_period(SymbolSpan pattern, std::int64_t x) {
    const std::size_t m = pattern.size();
    if (m == 0) throw InputError("x_period: empty pattern");
    if (x < 0) throw InputError("x_period: negative threshold");
    for (std::size_t ell = 1; ell < m; ++ell) {
        std::int64_t d = 0;
        for (std::size_t j = ell; j < m && d <= x; ++j) d += (pattern[j] != pattern[j - ell]);
        if (d <= x) return ell;
    }
    return m;
}

}  // namespace hamstream
