#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "corpus.hpp"
#include "gramconv/lcg_access.hpp"
#include "gramconv/lcg_build.hpp"
#include "gramconv/oracles.hpp"
#include "grammars.hpp"

using namespace gramconv;
using namespace gramconv::testing;

namespace {

LcgNavigator navigator(std::string_view text, std::uint64_t seed) {
    return LcgNavigator(build_lcg(text, seed), FingerprintContext::from_seed(seed + 100));
}

}  // namespace

TEST_CASE("abab") {
    const Rlcfg g = build_lcg("abab", 1);
    const LcgNavigator nav(g, FingerprintContext::from_seed(2));
    CHECK(nav.length() == 4);
    CHECK(nav.access(3) == 'a');
    CHECK(nav.access(4) == 'b');
    CHECK(nav.fingerprint(1, 2) == nav.fingerprint(3, 4));
    CHECK(nav.fingerprint(1, 2) != nav.fingerprint(2, 3));
    CHECK(nav.fingerprint(3, 2) == 0);
    CHECK(lce(nav, 1, 3, 10) == 2);
}

TEST_CASE("run rules are navigated without unrolling") {
    const std::string t = std::string(1000, 'a') + "b";
    const LcgNavigator nav = navigator(t, 3);
    const PlainText plain(t, nav.context());
    for (Position i : {1, 2, 500, 999, 1000, 1001}) CHECK(nav.access(i) == static_cast<std::uint8_t>(t[i - 1]));
    CHECK(nav.fingerprint(1, 1001) == plain.fingerprint(1, 1001));
    CHECK(nav.fingerprint(17, 600) == plain.fingerprint(17, 600));
    CHECK(nav.path(600).size() <= nav.depth() + 1);
}

TEST_CASE("operations agree with the plain text") {
    Rng rng(21);
    for (const auto& c : small_corpus(60, 1500, 22)) {
        const LcgNavigator nav = navigator(c.text, rng() % 1000);
        const PlainText plain(c.text, nav.context());
        const std::uint64_t n = c.text.size();
        REQUIRE(nav.length() == n);
        for (Position p = 1; p <= n; ++p) CHECK(nav.access(p) == static_cast<std::uint8_t>(c.text[p - 1]));
        for (int q = 0; q < 200; ++q) {
            const Position i = uniform(rng, 1, n);
            const Position j = uniform(rng, i - 1, n);
            CHECK(nav.fingerprint(i, j) == plain.fingerprint(i, j));
            const Position a = uniform(rng, 1, n);
            const Position b = uniform(rng, 1, n);
            CHECK(lce(nav, a, b, n) == naive_lce(c.text, a, b, n));
            CHECK(lcs(nav, a, b, n) == naive_lcs(c.text, a, b, n));
            const Position a2 = uniform(rng, a, n);
            const Position b2 = uniform(rng, b, n);
            const int want = naive_compare(c.text.substr(a - 1, a2 - a + 1), c.text.substr(b - 1, b2 - b + 1));
            const auto got = compare_lex(nav, a, a2, b, b2);
            CHECK((got < 0) == (want < 0));
            CHECK((got > 0) == (want > 0));
        }
    }
}

TEST_CASE("paths and level nodes") {
    for (const auto& c : small_corpus(30, 1000, 23)) {
        const LcgNavigator nav = navigator(c.text, 4);
        const std::uint64_t n = c.text.size();
        for (Position p = 1; p <= n; p += 7) {
            const auto path = nav.path(p);
            REQUIRE_FALSE(path.empty());
            CHECK(path.front().symbol == nav.lcg().root);
            CHECK(path.back().start == p);
            CHECK(path.back().end == p);
            CHECK(path.size() <= static_cast<std::size_t>(nav.depth()) + 1);
            for (std::size_t d = 0; d < path.size(); ++d) {
                CHECK(path[d].start <= p);
                CHECK(path[d].end >= p);
                CHECK(path[d].end - path[d].start + 1 == nav.symbol_length(path[d].symbol));
            }
            for (std::uint32_t k = 0; k <= nav.top_level(); ++k) {
                const auto node = nav.node_at_level(p, k);
                CHECK(nav.level(node.symbol) <= k);
                CHECK(node.start <= p);
                CHECK(node.end >= p);
            }
            CHECK(nav.node_at_level(p, 0).start == p);
            CHECK(nav.node_at_level(p, nav.top_level()).symbol == nav.lcg().root);
        }
    }
}

TEST_CASE("split candidates: shape") {
    const LcgNavigator nav = navigator("abracadabra", 5);
    for (Position i = 1; i < 11; ++i) {
        const auto m = split_candidates(nav, i, i + 1);
        CHECK(m == std::vector<Position>{i});
    }
    double worst = 0;
    for (const auto& c : small_corpus(40, 2000, 24)) {
        const LcgNavigator nv = navigator(c.text, 6);
        const std::uint64_t n = c.text.size();
        if (n < 2) continue;
        Rng rng(n);
        for (int q = 0; q < 100; ++q) {
            const Position i = uniform(rng, 1, n - 1);
            const Position j = uniform(rng, i + 1, n);
            const auto m = split_candidates(nv, i, j);
            REQUIRE_FALSE(m.empty());
            CHECK(std::is_sorted(m.begin(), m.end()));
            CHECK(std::adjacent_find(m.begin(), m.end()) == m.end());
            CHECK(m.front() == i);
            CHECK(m.back() == j - 1);
            const double lg = std::log2(static_cast<double>(j - i + 1));
            worst = std::max(worst, static_cast<double>(m.size()) / lg);
            CHECK(static_cast<double>(m.size()) <= 4 * lg + 8);
        }
    }
    MESSAGE("worst |M| / log2(j - i + 1) = " << worst);
}

TEST_CASE("split candidates cover every primary occurrence") {
    std::uint64_t checked = 0;
    for (const auto& c : small_corpus(25, 120, 25)) {
        const std::uint64_t n = c.text.size();
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            const LcgNavigator nav = navigator(c.text, seed);
            for (Position i = 1; i < n; ++i) {
                for (Position j = i + 1; j <= n; ++j) {
                    const auto m = split_candidates(nav, i, j);
                    for (const auto& o : naive_primary_occurrences(nav.lcg(), i, j)) {
                        const Position q = i + (o.split - o.start);
                        ++checked;
                        CHECK_MESSAGE(std::binary_search(m.begin(), m.end(), q),
                                      c.name << " i=" << i << " j=" << j << " q=" << q);
                    }
                }
            }
        }
    }
    CHECK(checked > 1000);
}
