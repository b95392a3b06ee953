#include <doctest.h>

#include <algorithm>

#include "corpus.hpp"
#include "gramconv/oracles.hpp"
#include "gramconv/primary_index.hpp"
#include "grammars.hpp"

using namespace gramconv;
using namespace gramconv::testing;

namespace {

std::vector<Position> split_positions(const std::vector<SplitPoint>& pts) {
    std::vector<Position> out;
    for (const auto& p : pts) out.push_back(p.split);
    std::sort(out.begin(), out.end());
    return out;
}

// Exhaustive check of leftmost() against the tree scan.
void check_exhaustive(const BalancedSlp& t, const PrimaryIndex& idx) {
    const std::uint64_t n = t.length();
    for (Position i = 1; i <= n; ++i) {
        for (Position k = i + 1; k <= n; ++k) {
            const auto occ = naive_primary_occurrences(t.slp(), i, k);
            for (Position j = i; j < k; ++j) {
                Position want = n + 1;
                for (const auto& o : occ) {
                    if (o.split - o.start == j - i) want = std::min(want, o.start);
                }
                CHECK_MESSAGE(idx.leftmost(i, j, k) == want, "i=" << i << " j=" << j << " k=" << k);
            }
        }
    }
}

}  // namespace

TEST_CASE("grid points of G1 and G2") {
    const auto ctx = FingerprintContext::from_seed(1);
    const auto b1 = BalancedSlp::annotate(g1(), ctx);
    CHECK(split_positions(slp_split_points(b1)) == std::vector<Position>{1, 2});
    const auto b2 = BalancedSlp::annotate(g2(), ctx);
    CHECK(split_positions(slp_split_points(b2)) == std::vector<Position>{1, 2});
    const auto one = BalancedSlp::annotate(Slp{{'a', 'b'}, {{0, 1}}, 2}, ctx);
    CHECK(slp_split_points(one).size() == 1);
}

TEST_CASE("leftmost examples on G1") {
    const auto t = BalancedSlp::annotate(g1(), FingerprintContext::from_seed(2));
    for (auto kind : {PrefixRangeKind::kBinarySearch, PrefixRangeKind::kZFast}) {
        const PrimaryIndex idx = build_index(t, {kind, SortMode::kFingerprint});
        CHECK(idx.leftmost(3, 3, 4) == 1);
        CHECK(idx.leftmost(1, 1, 2) == 1);
        CHECK(idx.leftmost(2, 2, 3) == 2);
        CHECK(idx.leftmost(1, 2, 4) == 1);
        CHECK(idx.leftmost(1, 1, 4) == idx.not_found());
        CHECK(idx.char_leftmost('b') == 2);
        CHECK(idx.char_leftmost('a') == 1);
        CHECK(idx.char_leftmost('z') == idx.not_found());
        CHECK(idx.leftmost(4, 4, 4) == 2);
    }
}

TEST_CASE("leftmost matches the tree scan exhaustively") {
    Rng rng(404);
    int texts = 0;
    for (const auto& c : small_corpus(14, 45, 8)) {
        for (auto sort : {SortMode::kFingerprint, SortMode::kNaive}) {
            const BalancedSlp t(random_slp(rng, c.text), FingerprintContext::from_seed(texts++));
            const PrimaryIndex idx = build_index(t, {PrefixRangeKind::kZFast, sort});
            check_exhaustive(t, idx);
        }
    }
}

TEST_CASE("char table against a scan") {
    Rng rng(9);
    for (const auto& c : small_corpus(20, 500, 4)) {
        const BalancedSlp t(random_slp(rng, c.text), FingerprintContext::from_seed(3));
        const auto table = slp_char_leftmost(t);
        for (unsigned b = 0; b < 256; ++b) {
            const auto pos = c.text.find(static_cast<char>(b));
            CHECK(table[b] == (pos == std::string::npos ? c.text.size() + 1 : pos + 1));
        }
    }
}

TEST_CASE("both sort modes give the same axes") {
    Rng rng(10);
    const std::string s = random_text(rng, 800, 2);
    const BalancedSlp t(random_slp(rng, s), FingerprintContext::from_seed(4));
    const PrimaryIndex a = build_index(t, {PrefixRangeKind::kZFast, SortMode::kFingerprint});
    const PrimaryIndex b = build_index(t, {PrefixRangeKind::kBinarySearch, SortMode::kNaive});
    REQUIRE(a.num_points() == b.num_points());
    for (int q = 0; q < 2000; ++q) {
        const Position i = uniform(rng, 1, s.size() - 1);
        const Position k = uniform(rng, i + 1, std::min<Position>(s.size(), i + 30));
        const Position j = uniform(rng, i, k - 1);
        CHECK(a.leftmost(i, j, k) == b.leftmost(i, j, k));
    }
}
