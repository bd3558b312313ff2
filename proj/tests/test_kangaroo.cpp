#include <doctest.h>

#include "hamstream/kangaroo.hpp"
#include "test_support.hpp"

using namespace hamstream;
namespace ts = hamstream::testsupport;

namespace {
std::size_t naive_lcp(SymbolSpan a, std::size_t i, SymbolSpan b, std::size_t j) {
    std::size_t l = 0;
    while (i + l < a.size() && j + l < b.size() && a[i + l] == b[j + l]) ++l;
    return l;
}
}  // namespace

TEST_CASE("suffix index answers pattern/text lcp queries exactly") {
    ts::Rng rng(61);
    for (int trial = 0; trial < 40; ++trial) {
        const auto p = ts::random_seq(rng, 3 + rng() % 30, 2 + rng() % 3);
        const auto t = ts::random_seq(rng, 10 + rng() % 60, 2 + rng() % 3);
        SuffixLcpIndex index(p, t);
        for (int probe = 0; probe < 50; ++probe) {
            const std::size_t i = rng() % (p.size() + 1);
            const std::size_t j = rng() % (t.size() + 1);
            CHECK(index.lcp(i, j) == naive_lcp(p, i, t, j));
        }
    }
}

TEST_CASE("kangaroo verification equals the oracle and counts probes") {
    ts::Rng rng(62);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t m = 6 + rng() % 24;
        const std::int64_t k = static_cast<std::int64_t>(rng() % 5);
        const auto p = ts::random_seq(rng, m, 3);
        const auto t = ts::random_seq(rng, m + rng() % 50, 3);
        SuffixLcpIndex index(p, t);
        const auto want = kmismatch_oracle(p, t, k);
        for (std::size_t i = m - 1; i < t.size(); ++i)
            CHECK(kangaroo_verify(index, static_cast<std::int64_t>(i), k) ==
                  want[i - m + 1]);
    }

    // Exact-match window: a single probe spans the whole pattern.
    const auto p = seq_from_bytes("abcabc");
    SuffixLcpIndex id1(p, p);
    WorkMeter meter;
    CHECK(kangaroo_verify(id1, 5, 0, &meter) == AlignmentOutput::exact(5, 0));
    CHECK(meter.verifier_probes == 1);

    // k+1 planted mismatches: rejected after exactly k+1 probes.
    ts::Rng rng2(63);
    const std::int64_t k = 3;
    auto window = ts::random_seq(rng2, 40, 26);
    auto pat = window;
    ts::plant_mismatches(rng2, window, static_cast<std::size_t>(k) + 1, 26);
    REQUIRE(hamming_distance(pat, window) == k + 1);
    SuffixLcpIndex id2(pat, window);
    WorkMeter meter2;
    CHECK(kangaroo_verify(id2, 39, k, &meter2).verdict == Verdict::No);
    CHECK(meter2.verifier_probes == static_cast<std::uint64_t>(k) + 1);

    CHECK_THROWS_AS(kangaroo_verify(id2, 4, k), InputError);
}

TEST_CASE("buffered verifier reports every window distance") {
    ts::Rng rng(64);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t m = 4 + rng() % 20;
        const std::int64_t k = static_cast<std::int64_t>(rng() % 6);
        const auto p = ts::random_seq(rng, m, 2 + rng() % 2);
        auto t = ts::random_seq(rng, m + rng() % 60, 2 + rng() % 2);
        if (rng() % 2) std::copy(p.begin(), p.end(), t.begin() + static_cast<std::ptrdiff_t>(
                                                          rng() % (t.size() - m + 1)));
        BufferedVerifier verifier(p, k, trial);
        const auto want = kmismatch_oracle(p, t, k);
        std::vector<AlignmentOutput> got;
        for (Symbol c : t)
            if (auto o = verifier.push(c)) got.push_back(*o);
        REQUIRE(got.size() == want.size());
        for (std::size_t i = 0; i < got.size(); ++i) REQUIRE(got[i] == want[i]);
    }
}
