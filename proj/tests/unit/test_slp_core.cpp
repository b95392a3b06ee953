#include <doctest.h>

#include <sstream>

#include "corpus.hpp"
#include "gramconv/errors.hpp"
#include "gramconv/lcg_build.hpp"
#include "gramconv/slp.hpp"
#include "grammars.hpp"

using namespace gramconv;
using namespace gramconv::testing;

TEST_CASE("validate accepts G1 and G2") {
    const auto r1 = validate(g1());
    REQUIRE(r1.ok());
    CHECK(r1.meta.exp_len[3] == 4);
    CHECK(r1.meta.height[3] == 2);
    const auto r2 = validate(g2());
    REQUIRE(r2.ok());
    CHECK(r2.meta.exp_len[2] == 4);
}

TEST_CASE("validate reports structural problems") {
    Slp forward{{'a', 'b'}, {{3, 0}, {0, 1}}, 3};
    auto r = validate(forward);
    REQUIRE_FALSE(r.ok());
    CHECK(r.issues.front().kind == SlpIssue::kForwardReference);
    CHECK(r.issues.front().rule == 0);

    CHECK(validate(Slp{{}, {}, 0}).issues.front().kind == SlpIssue::kEmptyAlphabet);
    CHECK(validate(Slp{{'a', 'a'}, {}, 0}).issues.front().kind == SlpIssue::kDuplicateTerminal);
    CHECK(validate(Slp{{'a'}, {{0, 0}}, 5}).issues.front().kind == SlpIssue::kRootOutOfRange);
    CHECK_THROWS_AS(compute_meta(forward), InvalidArgument);
}

TEST_CASE("length overflow is rejected") {
    Slp big{{'a'}, {}, 0};
    SymbolId cur = 0;
    for (int t = 0; t < 64; ++t) {
        big.rules.emplace_back(cur, cur);
        cur = static_cast<SymbolId>(big.num_symbols() - 1);
    }
    big.root = cur;
    const auto r = validate(big);
    REQUIRE_FALSE(r.ok());
    CHECK(r.issues.front().kind == SlpIssue::kLengthOverflow);
}

TEST_CASE("expand") {
    CHECK(expand(g1()) == "abab");
    CHECK(expand(g2()) == "aaaa");
    CHECK(expand(Slp{{'z'}, {}, 0}) == "z");
}

TEST_CASE("terminal streaming matches expand") {
    Rng rng(5);
    for (const auto& c : small_corpus(40, 300, 11)) {
        const Slp slp = random_slp(rng, c.text);
        std::string streamed;
        for_each_terminal(slp, [&](SymbolId a) { streamed.push_back(static_cast<char>(slp.terminal_bytes[a])); });
        CHECK(streamed == c.text);
        std::string pulled;
        for (TerminalCursor cur(slp); !cur.done();) pulled.push_back(static_cast<char>(cur.next_byte()));
        CHECK(pulled == c.text);
    }
}

TEST_CASE("grammar tree of G1") {
    const GrammarTree tree = build_grammar_tree(g1());
    const auto& root = tree.root();
    REQUIRE(root.internal());
    CHECK(root.symbol == 3);
    const auto& left = tree.nodes()[root.left];
    const auto& right = tree.nodes()[root.right];
    CHECK(left.symbol == 2);
    CHECK(left.internal());
    CHECK(left.start == 1);
    CHECK(right.symbol == 2);
    CHECK_FALSE(right.internal());
    CHECK(right.start == 3);
    CHECK(tree.internal_start(2) == 1);
    CHECK(tree.internal_start(3) == 1);
    CHECK(tree.internal_count() == 2);
}

TEST_CASE("grammar tree of G2") {
    const GrammarTree tree = build_grammar_tree(g2());
    const auto& root = tree.root();
    CHECK(root.symbol == 2);
    const auto& a = tree.nodes()[root.left];
    const auto& b = tree.nodes()[root.right];
    CHECK(a.symbol == 1);
    CHECK(a.internal());
    CHECK(b.symbol == 1);
    CHECK_FALSE(b.internal());
    CHECK(b.start == 3);
}

TEST_CASE("second copy of a repeated pair is a leaf") {
    // 2 -> ab, 3 -> (2, 2) with children built from terminals only
    const Slp slp{{'a', 'b'}, {{0, 1}, {2, 2}}, 3};
    const GrammarTree tree = build_grammar_tree(slp);
    std::size_t leaves_for_2 = 0;
    for (auto v : tree.leaves()) leaves_for_2 += tree.nodes()[v].symbol == 2;
    CHECK(leaves_for_2 == 1);
}

TEST_CASE("grammar tree leaves tile the text") {
    Rng rng(8);
    for (const auto& c : small_corpus(30, 200, 3)) {
        const Slp slp = random_slp(rng, c.text);
        const SymbolMeta meta = compute_meta(slp);
        const GrammarTree tree(slp, meta);
        Position next = 1;
        for (auto v : tree.leaves()) {
            const auto& node = tree.nodes()[v];
            CHECK(node.start == next);
            next += meta.exp_len[node.symbol];
        }
        CHECK(next == c.text.size() + 1);
        // every reachable nonterminal appears internally exactly once
        std::vector<int> internal(slp.num_symbols(), 0);
        for (const auto& node : tree.nodes()) internal[node.symbol] += node.internal();
        for (std::size_t id = slp.sigma(); id < slp.num_symbols(); ++id) CHECK(internal[id] == 1);
    }
}

TEST_CASE("SLP format round trip") {
    const Slp slp = g1();
    std::stringstream buf;
    write_slp(buf, slp);
    CHECK(buf.str() == "SLP v1\nalphabet 2 97 98\nrules 2\n0 1\n2 2\nroot 3\n");
    const Slp back = read_slp(buf, "g1.slp");
    CHECK(back.terminal_bytes == slp.terminal_bytes);
    CHECK(back.rules == slp.rules);
    CHECK(back.root == slp.root);
}

TEST_CASE("SLP format errors carry line numbers") {
    auto line_of = [](const std::string& text) -> std::size_t {
        std::istringstream in(text);
        try {
            read_slp(in, "x.slp");
        } catch (const FormatError& e) {
            CHECK(std::string(e.what()).rfind("x.slp:", 0) == 0);
            return e.line();
        }
        FAIL("no error for:\n" << text);
        return 0;
    };
    CHECK(line_of("SLP v2\n") == 1);
    CHECK(line_of("SLP v1\nalphabet 2 97\n") == 2);
    CHECK(line_of("SLP v1\nalphabet 1 97\nrules 1\n0 5\nroot 1\n") == 4);
    CHECK(line_of("SLP v1\nalphabet 1 97\nrules 1\n0 0\nroot 9\n") == 5);
    CHECK(line_of("SLP v1\nalphabet 1 97\nrules 1\n0 0\nroot 1\nextra\n") == 6);
    CHECK(line_of("SLP v1\nalphabet 1 97\nrules 2\n0 0\n") == 4);
    CHECK(line_of("SLP v1\nalphabet 1 97\nrules x\n") == 3);
    CHECK(line_of("SLP v1\nalphabet 2 97 97\n") == 2);
}

TEST_CASE("prune_unreachable keeps the expansion") {
    Slp slp{{'a', 'b'}, {{0, 1}, {1, 1}, {2, 2}}, 4};
    const Slp pruned = prune_unreachable(slp);
    CHECK(pruned.num_rules() == 2);
    CHECK(expand(pruned) == "abab");
    CHECK(validate(pruned).ok());
}

TEST_CASE("build_slp_from_text") {
    CHECK(expand(build_slp_from_text("abab", 1)) == "abab");
    const Slp one = build_slp_from_text("a", 1);
    CHECK(one.num_rules() == 0);
    CHECK(expand(one) == "a");
    Rng rng(99);
    const std::string text = random_text(rng, 10000, 4);
    const Slp slp = build_slp_from_text(text, 3);
    CHECK(validate(slp).ok());
    CHECK(expand(slp) == text);
    CHECK_THROWS_AS(build_slp_from_text("", 1), InvalidArgument);
}
