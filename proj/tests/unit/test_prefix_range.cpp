#include <doctest.h>

#include <algorithm>

#include "corpus.hpp"
#include "gramconv/errors.hpp"
#include "gramconv/prefix_range.hpp"
#include "grammars.hpp"

using namespace gramconv;
using namespace gramconv::testing;

namespace {

std::string read(const std::string& t, Direction dir, Window w) {
    if (dir == Direction::kForward) return t.substr(w.anchor - 1, w.length);
    return reversed(std::string_view(t).substr(w.anchor - w.length, w.length));
}

RankRange naive_range(const std::string& t, Direction dir, const std::vector<Window>& members, Window p) {
    const std::string pat = read(t, dir, p);
    RankRange r{members.size(), 0};
    for (std::size_t k = 0; k < members.size(); ++k) {
        if (read(t, dir, members[k]).rfind(pat, 0) == 0) {
            r.begin = std::min(r.begin, k);
            r.end = k + 1;
        }
    }
    return r.empty() ? RankRange{} : r;
}

const PrefixRangeKind kKinds[] = {PrefixRangeKind::kBinarySearch, PrefixRangeKind::kZFast};

}  // namespace

TEST_CASE("G1 right parts") {
    const PlainText t("ababc", FingerprintContext::from_seed(1));
    const std::vector<Window> members{{1, 2}, {3, 2}, {2, 1}};  // ab, ab, b
    for (auto kind : kKinds) {
        const auto idx = make_prefix_range(kind, t, Direction::kForward, members);
        CHECK(idx->size() == 3);
        CHECK(idx->prefix_range({1, 1}) == RankRange{0, 2});
        CHECK(idx->prefix_range({1, 0}) == RankRange{0, 3});
        CHECK(idx->prefix_range({2, 1}) == RankRange{2, 3});
        CHECK(idx->prefix_range({1, 2}) == RankRange{0, 2});
        const RankRange c = idx->prefix_range({5, 1});
        if (!c.empty()) CHECK_FALSE(idx->verify(c.begin, {5, 1}));
    }
}

TEST_CASE("empty member set") {
    const PlainText t("abc", FingerprintContext::from_seed(1));
    for (auto kind : kKinds) {
        const auto idx = make_prefix_range(kind, t, Direction::kForward, {});
        CHECK(idx->prefix_range({1, 1}).empty());
        CHECK(idx->prefix_range({1, 0}).empty());
    }
}

TEST_CASE("unsorted members are rejected") {
    const PlainText t("abc", FingerprintContext::from_seed(1));
    for (auto kind : kKinds) {
        CHECK_THROWS_AS(make_prefix_range(kind, t, Direction::kForward, {{2, 1}, {1, 1}}), InvalidArgument);
    }
}

TEST_CASE("two_fattest") {
    CHECK(two_fattest(0, 1) == 1);
    CHECK(two_fattest(0, 7) == 4);
    CHECK(two_fattest(4, 7) == 6);
    CHECK(two_fattest(5, 6) == 6);
    CHECK(two_fattest(8, 16) == 16);
    CHECK(two_fattest(3, 12) == 8);
    for (std::uint64_t a = 0; a < 70; ++a) {
        for (std::uint64_t b = a + 1; b < 80; ++b) {
            std::uint64_t best = b;
            for (std::uint64_t v = a + 1; v <= b; ++v) {
                if (__builtin_ctzll(v) > __builtin_ctzll(best)) best = v;
            }
            CHECK(two_fattest(a, b) == best);
        }
    }
}

TEST_CASE("random members against the naive range") {
    Rng rng(77);
    for (int round = 0; round < 60; ++round) {
        const std::size_t n = uniform(rng, 1, 400);
        const std::string s = random_text(rng, n, round % 2 ? 2 : 3);
        const PlainText t(s, FingerprintContext::from_seed(round));
        for (Direction dir : {Direction::kForward, Direction::kBackward}) {
            auto random_window = [&] {
                const std::uint64_t len = uniform(rng, 0, std::min<std::uint64_t>(n, 40));
                const std::uint64_t lo = dir == Direction::kForward ? 1 : std::max<std::uint64_t>(len, 1);
                const std::uint64_t hi = dir == Direction::kForward ? n - len + 1 : n;
                return Window{uniform(rng, lo, hi), len};
            };
            std::vector<Window> members(uniform(rng, 1, 150));
            for (auto& w : members) {
                w = random_window();
                if (w.length == 0) w.length = 1;
                if (dir == Direction::kForward && w.anchor + w.length - 1 > n) w.anchor = n - w.length + 1;
                if (dir == Direction::kBackward && w.anchor < w.length) w.anchor = w.length;
            }
            std::stable_sort(members.begin(), members.end(), [&](Window a, Window b) {
                return window_compare_naive(t, dir, a, b) < 0;
            });
            for (auto kind : kKinds) {
                const auto idx = make_prefix_range(kind, t, dir, members);
                for (int q = 0; q < 150; ++q) {
                    Window p = random_window();
                    if (q % 2 == 0) {
                        // a prefix of some member, so the range is nonempty
                        const Window& m = members[uniform(rng, 0, members.size() - 1)];
                        p = {m.anchor, uniform(rng, 0, m.length)};
                    }
                    const RankRange want = naive_range(s, dir, members, p);
                    const RankRange got = idx->prefix_range(p);
                    if (!want.empty()) {
                        CHECK(got == want);
                    } else if (!got.empty()) {
                        CHECK_FALSE(idx->verify(got.begin, p));
                    }
                }
            }
        }
    }
}

TEST_CASE("window helpers") {
    const PlainText t("abcab", FingerprintContext::from_seed(2));
    CHECK(window_char(t, Direction::kForward, {2, 3}, 0) == 'b');
    CHECK(window_char(t, Direction::kBackward, {3, 3}, 0) == 'c');
    CHECK(window_char(t, Direction::kBackward, {3, 3}, 2) == 'a');
    CHECK(window_lcp(t, Direction::kForward, {1, 3}, {4, 2}) == 2);
    CHECK(window_lcp(t, Direction::kBackward, {2, 2}, {5, 5}) == 2);
    CHECK(window_compare(t, Direction::kForward, {1, 2}, {4, 2}) == std::strong_ordering::equal);
    CHECK(window_compare(t, Direction::kForward, {1, 1}, {1, 2}) == std::strong_ordering::less);
    CHECK(window_compare(t, Direction::kBackward, {1, 1}, {2, 1}) == std::strong_ordering::less);
}
