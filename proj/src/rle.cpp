#include "hamstream/rle.hpp"

namespace hamstream {

RunLengthList rle_encode(SymbolSpan s) {
    RunLengthList runs;
    for (Symbol c : s) {
        if (runs.empty() || runs.back().first != c) runs.emplace_back(c, 1);
        else ++runs.back().second;
    }
    return runs;
}

SymbolSeq rle_decode(const RunLengthList& runs) {
    SymbolSeq s;
    for (const auto& [sym, len] : runs) s.insert(s.end(), static_cast<std::size_t>(len), sym);
    return s;
}

RunLengthList ModularRle::class_runs(std::size_t r) const {
    RunLengthList out;
    const auto& list = lists.at(r);
    const std::int64_t class_len =
        r < length ? static_cast<std::int64_t>((length - r - 1) / modulus + 1) : 0;
    for (std::size_t t = 0; t < list.size(); ++t) {
        const std::int64_t end = (t + 1 < list.size()) ? list[t + 1].start : class_len;
        out.emplace_back(list[t].symbol, end - list[t].start);
    }
    return out;
}

ModularRle rle_encode_mod(SymbolSpan s, std::size_t ell) {
    if (ell == 0) throw InputError("rle_encode_mod: modulus must be positive");
    ModularRle enc;
    enc.modulus = ell;
    enc.length = s.size();
    enc.lists.resize(ell);
    for (std::size_t j = 0; j < s.size(); ++j) {
        auto& list = enc.lists[j % ell];
        const std::int64_t t = static_cast<std::int64_t>(j / ell);
        if (list.empty() || list.back().symbol != s[j]) list.push_back({t, s[j]});
    }
    return enc;
}

SymbolSeq rle_decode_mod(const ModularRle& enc) {
    SymbolSeq s(enc.length);
    for (std::size_t r = 0; r < enc.modulus && r < enc.length; ++r) {
        const auto runs = enc.class_runs(r);
        std::size_t j = r;
        for (const auto& [sym, len] : runs)
            for (std::int64_t c = 0; c < len; ++c, j += enc.modulus) s[j] = sym;
    }
    return s;
}

}  // namespace hamstream
