#include <doctest.h>

#include <cmath>

#include "corpus.hpp"
#include "gramconv/lz_fcpm.hpp"
#include "gramconv/oracles.hpp"
#include "grammars.hpp"

using namespace gramconv;
using namespace gramconv::testing;

namespace {

std::uint64_t call_bound(std::uint64_t len) {
    return 2 * static_cast<std::uint64_t>(std::ceil(std::log2(static_cast<double>(len) + 1))) + 4;
}

// Expansion of a substring SLP through its own rules.
std::string expand_rules(const SubstringSlp& p) {
    const Slp& g = p.parent->slp();
    Slp whole = g;
    for (const auto& r : p.fresh_rules) whole.rules.push_back(r);
    whole.root = p.root;
    return expand(whole);
}

}  // namespace

TEST_CASE("substring SLPs of G1") {
    const auto t = BalancedSlp::annotate(g1(), FingerprintContext::from_seed(1));
    const SubstringSlp whole = extract_substring_slp(t, 1, 4);
    CHECK(whole.fresh_rules.empty());
    CHECK(whole.root == t.slp().root);
    CHECK(whole.expand() == "abab");

    const SubstringSlp mid = extract_substring_slp(t, 2, 3);
    CHECK(mid.expand() == "ba");
    CHECK(expand_rules(mid) == "ba");
    CHECK(mid.fresh_rules.size() <= 2 * t.height());

    const SubstringSlp one = extract_substring_slp(t, 3, 3);
    CHECK(one.pieces.size() == 1);
    CHECK(one.fresh_rules.empty());
    CHECK(one.expand() == "a");
}

TEST_CASE("substring SLPs on random grammars") {
    Rng rng(12);
    for (const auto& c : small_corpus(30, 600, 2)) {
        const BalancedSlp t(random_slp(rng, c.text), FingerprintContext::from_seed(8));
        for (int q = 0; q < 100; ++q) {
            const Position i = uniform(rng, 1, c.text.size());
            const Position j = uniform(rng, i, c.text.size());
            const SubstringSlp p = extract_substring_slp(t, i, j);
            const std::string want = c.text.substr(i - 1, j - i + 1);
            CHECK(expand_rules(p) == want);
            CHECK(p.fingerprint() == t.fingerprint(i, j));
            CHECK(p.fresh_rules.size() <= 2 * std::max<std::uint32_t>(t.height(), 1));
        }
    }
}

TEST_CASE("engines on abab") {
    const auto ctx = FingerprintContext::from_seed(2);
    const BalancedSlp t(g1(), ctx);
    const PrimaryIndex idx = build_index(t);
    const FingerprintScanEngine scan;
    const IndexAssistedEngine index(idx);
    for (const OccurrenceEngine* e : {static_cast<const OccurrenceEngine*>(&scan), static_cast<const OccurrenceEngine*>(&index)}) {
        CHECK(e->leftmost_occurrence(extract_substring_slp(t, 3, 4), t) == 1);
        CHECK(e->leftmost_occurrence(extract_substring_slp(t, 1, 4), t) == 1);
        CHECK(e->leftmost_occurrence(extract_substring_slp(t, 4, 4), t) == 2);
    }
    // pattern from another text: "bb" does not occur in abab
    const BalancedSlp other(Slp{{'a', 'b'}, {{1, 1}, {0, 2}}, 3}, ctx);
    CHECK(scan.leftmost_occurrence(extract_substring_slp(other, 2, 3), t) == 5);
}

TEST_CASE("engines agree with a text search") {
    Rng rng(21);
    for (const auto& c : small_corpus(25, 400, 6)) {
        const BalancedSlp t(random_slp(rng, c.text), FingerprintContext::from_seed(4));
        const PrimaryIndex idx = build_index(t);
        const IndexAssistedEngine index(idx, 16);
        const FingerprintScanEngine scan;
        for (int q = 0; q < 60; ++q) {
            const Position i = uniform(rng, 1, c.text.size());
            const Position j = uniform(rng, i, std::min<Position>(c.text.size(), i + uniform(rng, 0, 40)));
            const SubstringSlp p = extract_substring_slp(t, i, j);
            const Position want = c.text.find(c.text.substr(i - 1, j - i + 1)) + 1;
            CHECK(scan.leftmost_occurrence(p, t) == want);
            CHECK(index.leftmost_occurrence(p, t) == want);
        }
    }
}

TEST_CASE("parse examples") {
    using P = LzPhrase;
    for (auto kind : {EngineKind::kScan, EngineKind::kIndex}) {
        CHECK(slp_to_lz_fcpm(g1(), 1, kind).phrases == std::vector<P>{P::literal('a'), P::literal('b'), P::copy(1, 2)});
        CHECK(slp_to_lz_fcpm(g2(), 1, kind).phrases == std::vector<P>{P::literal('a'), P::copy(1, 3)});
    }
}

TEST_CASE("parses equal the greedy definition and the stream algorithm") {
    int seed = 0;
    for (const auto& c : small_corpus(80, 600, 19)) {
        const auto want = naive_lz(c.text).starts();
        for (auto kind : {EngineKind::kScan, EngineKind::kIndex}) {
            Rng rng(++seed);
            ParseStats stats;
            const LzParse p = slp_to_lz_fcpm(random_slp(rng, c.text), seed, kind, &stats);
            CHECK_MESSAGE(p.starts() == want, c.name);
            CHECK(check_lz_invariants(p, c.text).empty());
            for (const auto& ph : stats.phrases) CHECK(ph.calls <= call_bound(ph.length));
        }
    }
}
