#include <doctest.h>

#include <cmath>
#include <map>

#include "hamstream/fingerprint.hpp"
#include "hamstream/partition.hpp"
#include "hamstream/primes.hpp"
#include "test_support.hpp"

using namespace hamstream;
namespace ts = hamstream::testsupport;

TEST_CASE("partition splits by residue class") {
    const auto s = seq_from_bytes("abcdef");
    const auto parts = partition(s, 2);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0] == seq_from_bytes("ace"));
    CHECK(parts[1] == seq_from_bytes("bdf"));

    const auto parts3 = partition(seq_from_bytes("abcde"), 3);
    CHECK(parts3[0] == seq_from_bytes("ad"));
    CHECK(parts3[1] == seq_from_bytes("be"));
    CHECK(parts3[2] == seq_from_bytes("c"));

    CHECK_THROWS_AS(partition(s, 0), InputError);
}

TEST_CASE("interleave inverts partition and lengths match the closed form") {
    ts::Rng rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t len = rng() % 50;
        const std::size_t q = 1 + rng() % 12;
        const auto s = ts::random_seq(rng, len, 6);
        const auto parts = partition(s, q);
        for (std::size_t r = 0; r < q; ++r)
            CHECK(parts[r].size() == subpattern_length(len, q, r));
        CHECK(interleave(parts) == s);
    }
}

TEST_CASE("substream_index formula, periodicity and alignment") {
    CHECK(substream_index(3, 0, /*i=*/5, /*m=*/6) == 0);
    CHECK(substream_index(3, 2, 7, 6) == 1);

    ts::Rng rng(22);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t m = 4 + rng() % 20;
        const std::size_t q = 1 + rng() % 7;
        const std::size_t r = rng() % q;
        const std::int64_t i =
            static_cast<std::int64_t>(m) - 1 + static_cast<std::int64_t>(rng() % 40);
        const std::size_t rr = substream_index(q, r, i, m);
        CHECK(substream_index(q, r, i + static_cast<std::int64_t>(q), m) == rr);

        // Positions of the r-th subpattern land on the latest suffix of the
        // rr-th substream: enumerate and check residues and the end position.
        const std::size_t len = subpattern_length(m, q, r);
        if (len == 0) continue;
        std::vector<std::int64_t> aligned;
        for (std::size_t x = r; x < m; x += q)
            aligned.push_back(i - static_cast<std::int64_t>(m) + 1 + static_cast<std::int64_t>(x));
        for (std::int64_t g : aligned)
            CHECK(static_cast<std::size_t>(g % static_cast<std::int64_t>(q)) == rr);
        CHECK(aligned.back() <= i);
        CHECK(aligned.back() > i - static_cast<std::int64_t>(q));
    }
}

TEST_CASE("prime sampling: membership, determinism, uniformity") {
    PrimeSampler tiny(PrimeInterval{2, 3}, 99);
    const auto draws = tiny.sample(2);
    for (auto p : draws) CHECK((p == 2 || p == 3));
    CHECK(tiny.sample(2) == draws);  // equal seed, equal output
    CHECK(PrimeSampler(PrimeInterval{2, 3}, 99).sample(2) == draws);

    PrimeSampler s(PrimeInterval{10, 60}, 1234);
    const auto& primes = s.primes();
    REQUIRE(primes.size() > 4);
    const std::size_t n_draws = 100000;
    std::map<std::uint64_t, std::size_t> freq;
    for (auto p : s.sample(n_draws)) ++freq[p];
    const double expect = static_cast<double>(n_draws) / static_cast<double>(primes.size());
    const double p0 = 1.0 / static_cast<double>(primes.size());
    const double sigma = std::sqrt(n_draws * p0 * (1 - p0));
    for (auto p : primes)
        CHECK(std::abs(static_cast<double>(freq[p]) - expect) <= 3.0 * sigma);

    CHECK_THROWS_AS(PrimeSampler(PrimeInterval{24, 28}, 1).sample(1), ConfigError);
}

TEST_CASE("sampling interval arithmetic and the short-pattern report") {
    const auto iv = sampling_interval(/*k=*/1, /*delta=*/1.0, /*m=*/1 << 20);
    CHECK(iv.lo == 400);   // (k/delta) * log2(m)^2
    CHECK(iv.hi == 13600);  // 34x the lower bound

    CHECK(length_supports_partition(1, 1.0, 1 << 20));
    CHECK_FALSE(length_supports_partition(4, 1.0, 64));
    PrimeSampler small(4, 1.0, 64, 7);
    CHECK(small.small_m_fallback());
    PrimeSampler big(1, 1.0, 1 << 20, 7);
    CHECK_FALSE(big.small_m_fallback());
}

TEST_CASE("isolation collision bound holds when the interval is prime-rich") {
    // Distinct positions rarely share a residue modulo a sampled prime. Run
    // the check only where the interval provably holds enough primes.
    const std::uint64_t m = 1 << 20;
    const std::int64_t k = 1;
    PrimeSampler sampler(k, 1.0, m, 4242);
    const double need = 32.0 * static_cast<double>(k) * log2_of(m);
    if (static_cast<double>(sampler.primes().size()) < need) {
        WARN_MESSAGE(false, "interval too thin for the collision-bound hypothesis; skipped");
        return;
    }
    ts::Rng rng(4243);
    const auto qs = sampler.sample(400);
    std::size_t events = 0, collisions = 0;
    for (int pair = 0; pair < 250; ++pair) {
        const std::uint64_t p1 = 1 + rng() % m;
        std::uint64_t p2 = 1 + rng() % m;
        while (p2 == p1) p2 = 1 + rng() % m;
        const std::uint64_t d = p1 > p2 ? p1 - p2 : p2 - p1;
        for (auto q : qs) {
            ++events;
            collisions += (d % q == 0) ? 1 : 0;
        }
    }
    const double bound = 1.0 / (32.0 * static_cast<double>(k));
    const double sigma = std::sqrt(static_cast<double>(events) * bound * (1 - bound));
    CHECK(static_cast<double>(collisions) <= bound * static_cast<double>(events) + 3.0 * sigma);
}

TEST_CASE("fingerprints: determinism, empty case, collision trial") {
    const KarpRabin kr(5);
    CHECK(kr.hash(SymbolSpan(SymbolSeq{})) == 0);
    ts::Rng rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        const auto s = ts::random_seq(rng, rng() % 40, 8);
        CHECK(kr.hash(SymbolSpan(s)) == kr.hash(SymbolSpan(s)));
    }
    std::size_t collisions = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        auto a = ts::random_seq(rng, 32, 1u << 16);
        auto b = ts::random_seq(rng, 32, 1u << 16);
        if (a == b) continue;
        collisions += kr.hash(SymbolSpan(a)) == kr.hash(SymbolSpan(b)) ? 1 : 0;
    }
    CHECK(collisions == 0);
}

TEST_CASE("sliding fingerprint equals from-scratch hashing") {
    const KarpRabin kr(17);
    ts::Rng rng(24);
    const auto stream = ts::random_seq(rng, 200, 5);
    for (std::size_t window : {std::size_t{1}, std::size_t{3}, std::size_t{17}}) {
        SlidingFingerprint sf(kr, window);
        for (std::size_t i = 0; i < stream.size(); ++i) {
            sf.feed(kr, stream[i], sf.full() ? stream[i - window] : 0);
            if (i + 1 >= window) {
                const SymbolSeq w(stream.begin() + static_cast<std::ptrdiff_t>(i + 1 - window),
                                  stream.begin() + static_cast<std::ptrdiff_t>(i + 1));
                CHECK(sf.value() == kr.hash(SymbolSpan(w)));
            }
        }
    }
}
