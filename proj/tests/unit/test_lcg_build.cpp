#include <doctest.h>

#include <array>
#include <cmath>
#include <sstream>

#include "corpus.hpp"
#include "gramconv/errors.hpp"
#include "gramconv/lcg_build.hpp"
#include "gramconv/oracles.hpp"
#include "grammars.hpp"
#include "level_trace.hpp"

using namespace gramconv;
using namespace gramconv::testing;

namespace {

std::vector<SymbolId> symbols_of(const std::vector<LevelTrace::Item>& items) {
    std::vector<SymbolId> out;
    for (const auto& it : items) out.push_back(it.symbol);
    return out;
}

// Replays the permutation of even level k from the recorded insertions.
PermutationOracle replay(const LevelTrace& trace, std::uint32_t k) {
    PermutationOracle pi(0);
    auto it = trace.inserts.find(k);
    if (it == trace.inserts.end()) return pi;
    for (const auto& ins : it->second) pi.insert_at(ins.symbol, ins.rank);
    return pi;
}

struct TraceCheck {
    std::uint64_t heavy_odd_repeats = 0;  // adjacent equal heavy symbols seen by odd levels
    std::uint64_t light_singletons = 0;
};

// Recomputes every level from the previous one with the reference functions.
TraceCheck check_trace(const Rlcfg& g, const LevelTrace& trace, std::uint32_t levels) {
    TraceCheck out;
    // A heavy top symbol may already have been forwarded one level further.
    REQUIRE(trace.levels.size() >= levels + 1);
    CHECK(trace.levels[levels].size() == 1);
    const LcgMeta meta = compute_meta(g);
    for (std::uint32_t k = 1; k <= levels; ++k) {
        const auto in = symbols_of(trace.levels[k - 1]);
        const auto& got = trace.levels[k];
        const LevelThreshold th = level_threshold(k);
        auto light = [&](SymbolId s) { return th.admits(meta.exp_len[s]); };
        if (k % 2 == 1) {
            for (std::size_t t = 1; t < in.size(); ++t) out.heavy_odd_repeats += in[t] == in[t - 1] && !light(in[t]);
            const auto runs = odd_level_runs(in, light);
            REQUIRE(runs.size() == got.size());
            for (std::size_t t = 0; t < runs.size(); ++t) {
                if (runs[t].second == 1) {
                    CHECK(got[t].symbol == runs[t].first);
                } else {
                    REQUIRE_FALSE(g.is_terminal(got[t].symbol));
                    const LcgRule& r = g.rule(got[t].symbol);
                    CHECK(r.is_run());
                    CHECK(r.children[0] == runs[t].first);
                    CHECK(r.count == runs[t].second);
                    CHECK(r.level == k);
                }
            }
        } else {
            const PermutationOracle pi = replay(trace, k);
            CHECK(pi.check_invariants());
            const auto blocks = even_level_blocks(in, light, [&](SymbolId s) { return pi.rank(s); });
            REQUIRE(blocks.size() == got.size());
            std::size_t pos = 0;
            for (std::size_t t = 0; t < blocks.size(); ++t) {
                if (blocks[t].size() == 1) {
                    CHECK(got[t].symbol == blocks[t][0]);
                    if (light(blocks[t][0])) {
                        ++out.light_singletons;
                        // Only the tail of a light segment can be left alone.
                        const bool tail = pos + 1 == in.size() || !light(in[pos + 1]);
                        CHECK(tail);
                    }
                } else {
                    REQUIRE_FALSE(g.is_terminal(got[t].symbol));
                    const LcgRule& r = g.rule(got[t].symbol);
                    CHECK_FALSE(r.is_run());
                    CHECK(r.children == blocks[t]);
                    CHECK(r.level == k);
                }
                pos += blocks[t].size();
            }
        }
    }
    return out;
}

Rlcfg traced_build(std::string_view text, std::uint64_t seed, LevelTrace& trace, LcgBuildStats* stats) {
    LcgBuildOptions opt;
    opt.observer = &trace;
    return build_lcg(text, seed, stats, opt);
}

}  // namespace

TEST_CASE("level thresholds") {
    CHECK(level_threshold(1).exponent == 0);
    CHECK(level_threshold(1).max_length == 1);
    CHECK(level_threshold(2).max_length == 1);
    CHECK(level_threshold(3).exponent == 1);
    CHECK(level_threshold(3).numerator() == 4);
    CHECK(level_threshold(3).denominator() == 3);
    CHECK(level_threshold(3).admits(1));
    CHECK_FALSE(level_threshold(3).admits(2));
    CHECK(level_threshold(7).max_length == 2);  // 64/27
    CHECK(level_threshold(9).max_length == 3);  // 256/81
    for (std::uint32_t a = 0; a < 60; ++a) {
        const double l = std::pow(4.0 / 3.0, a);
        const std::uint64_t m = level_threshold(2 * a + 1).max_length;
        CHECK(static_cast<double>(m) <= l * (1 + 1e-12));
        CHECK(static_cast<double>(m + 1) > l * (1 - 1e-12));
        CHECK(level_threshold(2 * a + 2).max_length == m);
    }
    CHECK(fits_threshold(~std::uint64_t{0}, 400));
    CHECK_FALSE(fits_threshold(2, 1));
    CHECK(level_threshold(1000).admits(~std::uint64_t{0}));
}

TEST_CASE("permutation oracle keeps an order-statistic AVL tree") {
    PermutationOracle pi(5);
    std::vector<SymbolId> model;
    Rng rng(3);
    for (SymbolId s = 0; s < 2000; ++s) {
        if (rng() % 2) {
            CHECK(pi.insert(s));
            CHECK_FALSE(pi.insert(s));
            model.insert(model.begin() + static_cast<std::ptrdiff_t>(pi.rank(s) - 1), s);
        } else {
            const std::uint64_t r = uniform(rng, 1, model.size() + 1);
            pi.insert_at(s, r);
            model.insert(model.begin() + static_cast<std::ptrdiff_t>(r - 1), s);
        }
    }
    CHECK(pi.check_invariants());
    CHECK(pi.size() == model.size());
    for (std::size_t t = 0; t < model.size(); ++t) CHECK(pi.rank(model[t]) == t + 1);

    // Every rank in [1, size + 1] is reachable for a new symbol.
    std::vector<int> seen(4, 0);
    for (std::uint64_t seed = 0; seed < 400; ++seed) {
        PermutationOracle q(seed);
        q.insert(10);
        q.insert(11);
        q.insert(12);
        q.insert(13);
        seen[q.rank(13) - 1] += 1;
    }
    for (int c : seen) CHECK(c > 50);
}

TEST_CASE("odd and even levels by hand") {
    // S = cabca with pi(a)=2, pi(b)=1, pi(c)=3: local minimum at b only.
    const std::vector<SymbolId> s{2, 0, 1, 2, 0};
    const auto blocks = even_level_blocks(
        s, [](SymbolId) { return true; }, [](SymbolId x) { return std::array<std::uint64_t, 3>{2, 1, 3}[x]; });
    REQUIRE(blocks.size() == 2);
    CHECK(blocks[0] == std::vector<SymbolId>{2, 0, 1});
    CHECK(blocks[1] == std::vector<SymbolId>{2, 0});

    const auto runs = odd_level_runs({0, 0, 0, 1, 2, 2}, [](SymbolId x) { return x != 2; });
    REQUIRE(runs.size() == 4);
    CHECK(runs[0] == std::pair<SymbolId, std::uint64_t>{0, 3});
    CHECK(runs[2] == std::pair<SymbolId, std::uint64_t>{2, 1});
}

TEST_CASE("tiny texts") {
    LcgBuildStats st;
    const Rlcfg a = build_lcg("a", 1, &st);
    CHECK(a.rules.empty());
    CHECK(a.root == 0);
    CHECK(st.levels == 0);

    const Rlcfg aaaa = build_lcg("aaaa", 1, &st);
    REQUIRE(aaaa.rules.size() == 1);
    CHECK(aaaa.rules[0].is_run());
    CHECK(aaaa.rules[0].count == 4);
    CHECK(aaaa.rules[0].level == 1);
    CHECK(aaaa.root == 1);
    CHECK(st.levels == 1);
    CHECK(expand(aaaa) == "aaaa");

    const Rlcfg ab = build_lcg("ab", 1, &st);
    CHECK(expand(ab) == "ab");
    CHECK(validate(ab).empty());
}

TEST_CASE("every level matches the reference recomputation") {
    TraceCheck total;
    for (const auto& c : small_corpus(120, 1500, 31)) {
        LevelTrace trace;
        LcgBuildStats st;
        const Rlcfg g = traced_build(c.text, 77, trace, &st);
        CHECK(expand(g) == c.text);
        const TraceCheck one = check_trace(g, trace, st.levels);
        total.heavy_odd_repeats += one.heavy_odd_repeats;
        total.light_singletons += one.light_singletons;
    }
    // The corpus does exercise heavy repeats and stranded light symbols.
    CHECK(total.heavy_odd_repeats > 0);
    CHECK(total.light_singletons > 0);
}

TEST_CASE("round trip with level and size bounds") {
    double worst_ratio = 0;
    for (const auto& c : small_corpus(500, 3000, 41)) {
        LcgBuildStats st;
        const Rlcfg g = build_lcg(c.text, 9, &st);
        REQUIRE(expand(g) == c.text);
        CHECK(validate(g).empty());
        const double n = static_cast<double>(c.text.size());
        CHECK(st.levels <= level_cap(c.text.size()));
        CHECK(st.level_sizes.size() == st.levels + 1);
        CHECK(st.level_sizes[0] == c.text.size());
        std::uint64_t sum = 0;
        for (std::size_t k = 1; k < st.level_sizes.size(); ++k) sum += st.level_sizes[k];
        worst_ratio = std::max(worst_ratio, static_cast<double>(sum) / n);
        CHECK(static_cast<double>(sum) <= 8 * n);
        CHECK(st.rules == g.rules.size());
        for (const auto& r : g.rules) CHECK((r.is_run() ? r.level % 2 == 1 : r.level % 2 == 0));
    }
    MESSAGE("worst sum |S_k| / n = " << worst_ratio);
}

TEST_CASE("same seed gives the same grammar") {
    Rng rng(8);
    const std::string t = random_text(rng, 3000, 3);
    std::ostringstream a;
    std::ostringstream b;
    write_lcg(a, build_lcg(t, 1234));
    write_lcg(b, build_lcg(t, 1234));
    CHECK(a.str() == b.str());
    std::ostringstream c;
    write_lcg(c, build_lcg(t, 1235));
    std::istringstream in(c.str());
    CHECK(expand(read_lcg(in)) == t);
}

TEST_CASE("SLP input and text input agree") {
    Rng rng(4);
    for (const auto& c : small_corpus(40, 800, 5)) {
        const Slp s = random_slp(rng, c.text);
        std::ostringstream a;
        std::ostringstream b;
        write_lcg(a, build_lcg(s, 3));
        write_lcg(b, build_lcg(c.text, 3));
        CHECK(a.str() == b.str());
    }
}

TEST_CASE("size budget") {
    CHECK(size_budget(1024, 2, 1) == doctest::Approx(2 * 9));
    CHECK(size_budget(4, 4, 1) == doctest::Approx(4));  // log2 floor at 2

    Rng rng(6);
    const std::string t = copy_mutate(rng, 300, 6, 0.01);
    const Delta d = naive_delta(t);
    std::ostringstream plain;
    std::ostringstream budget;
    write_lcg(plain, build_lcg(t, 55));
    LcgBuildStats st;
    write_lcg(budget, build_lcg_with_budget(t, 55, d.value(), 1e9, &st));
    CHECK(plain.str() == budget.str());
    CHECK(st.restarts == 0);

    CHECK_THROWS_AS(build_lcg_with_budget(t, 55, d.value(), 1e-6, &st), std::runtime_error);

    std::string ab;
    for (int r = 0; r < 512; ++r) ab += "ab";
    const double dab = naive_delta(ab).value();
    unsigned restarts = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const Rlcfg g = build_lcg_with_budget(ab, seed, dab, kDefaultBudgetConstant, &st);
        CHECK(static_cast<double>(g.rules.size()) <= size_budget(ab.size(), dab));
        CHECK(expand(g) == ab);
        restarts += st.restarts;
    }
    CHECK(restarts <= 10);
}

TEST_CASE("budget failure lists the observed sizes") {
    std::string msg;
    try {
        build_lcg_with_budget("abcabcabdabc", 1, 1.0, 0.01);
    } catch (const std::runtime_error& e) {
        msg = e.what();
    }
    CHECK(msg.find("observed sizes") != std::string::npos);
}

TEST_CASE("binarize keeps the expansion") {
    for (const auto& c : small_corpus(80, 2000, 61)) {
        const Rlcfg g = build_lcg(c.text, 2);
        const Slp s = binarize(g);
        CHECK(expand(s) == c.text);
        CHECK(validate(s).ok());
    }
    const Slp one = binarize(build_lcg("a", 0));
    CHECK(one.rules.empty());
    CHECK(expand(one) == "a");
    // A^1000 needs about 2 log2(1000) rules.
    const Slp run = binarize(build_lcg(std::string(1000, 'a'), 0));
    CHECK(run.rules.size() <= 20);
    CHECK(expand(run) == std::string(1000, 'a'));
    CHECK(expand(build_slp_from_text("mississippi")) == "mississippi");
}

TEST_CASE("LCG format") {
    const Rlcfg g = build_lcg("abracadabra abracadabra", 3);
    std::ostringstream out;
    write_lcg(out, g);
    std::istringstream in(out.str());
    const Rlcfg back = read_lcg(in);
    CHECK(expand(back) == expand(g));
    REQUIRE(back.rules.size() == g.rules.size());
    for (std::size_t r = 0; r < g.rules.size(); ++r) CHECK(back.rules[r].level == g.rules[r].level);

    auto line_of = [](const std::string& text) -> std::size_t {
        std::istringstream s(text);
        try {
            read_lcg(s);
        } catch (const FormatError& e) {
            return e.line();
        }
        return 0;
    };
    CHECK(line_of("LCG v1\nalphabet 1 97\nrules 1\nR 0 4\nroot 1\n") == 0);
    CHECK(line_of("SLP v1\n") == 1);
    CHECK(line_of("LCG v1\nalphabet 2 97\n") == 2);
    CHECK(line_of("LCG v1\nalphabet 1 97\nrules 1\nR 0 1\nroot 1\n") == 4);
    CHECK(line_of("LCG v1\nalphabet 1 97\nrules 1\nB 1 0\nroot 1\n") == 4);
    CHECK(line_of("LCG v1\nalphabet 1 97\nrules 1\nB 2 0 1\nroot 1\n") == 4);
    CHECK(line_of("LCG v1\nalphabet 1 97\nrules 1\nX 0 1\nroot 1\n") == 4);
    CHECK(line_of("LCG v1\nalphabet 1 97\nrules 1\nR 0 4\nroot 2\n") == 5);
    CHECK(line_of("LCG v1\nalphabet 1 97\nrules 1\nR 0 4\nroot 1\nlevel 0 1\n") == 6);
    CHECK(line_of("LCG v1\nalphabet 1 97\nrules 1\nR 0 4\nroot 1\nlevel 1 2\n") != 0);
}
