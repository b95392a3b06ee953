#include "gramconv/lz_from_lcg.hpp"

#include <algorithm>

#include "gramconv/errors.hpp"
#include "gramconv/seed.hpp"
#include "phrase_search.hpp"

namespace gramconv {

namespace {

// Preorder walk of the grammar tree: calls visit(symbol, start) for the
// internal occurrence of every nonterminal and for the first (leftmost)
// occurrence of every terminal.
template <typename Visit>
void walk_grammar_tree(const LcgNavigator& nav, Visit&& visit) {
    const Rlcfg& g = nav.lcg();
    std::vector<bool> seen(g.num_symbols(), false);
    std::vector<std::pair<SymbolId, Position>> stack{{g.root, 1}};
    while (!stack.empty()) {
        const auto [s, start] = stack.back();
        stack.pop_back();
        if (seen[s]) continue;
        seen[s] = true;
        visit(s, start);
        if (g.is_terminal(s)) continue;
        const LcgRule& rule = g.rule(s);
        if (rule.is_run()) {
            // Children [Y, rest]: the copies after the first are leaves.
            stack.push_back({rule.children[0], start});
            continue;
        }
        for (std::size_t q = rule.children.size(); q-- > 0;) {
            stack.push_back({rule.children[q], start + nav.child_prefix_length(s, q)});
        }
    }
}

}  // namespace

std::vector<SplitPoint> lcg_split_points(const LcgNavigator& nav) {
    const Rlcfg& g = nav.lcg();
    std::vector<SplitPoint> points;
    walk_grammar_tree(nav, [&](SymbolId s, Position start) {
        if (g.is_terminal(s)) return;
        const LcgRule& rule = g.rule(s);
        const std::uint64_t total = nav.symbol_length(s);
        const std::uint64_t boundaries = rule.is_run() ? 1 : rule.children.size() - 1;
        for (std::uint64_t q = 1; q <= boundaries; ++q) {
            const std::uint64_t before = nav.child_prefix_length(s, q);
            const std::uint64_t left = nav.symbol_length(rule.child(q));
            points.push_back({start + before - 1, left, total - before, s, static_cast<std::uint32_t>(q)});
        }
    });
    return points;
}

std::array<Position, 256> lcg_char_leftmost(const LcgNavigator& nav) {
    std::array<Position, 256> table;
    table.fill(nav.length() + 1);
    const Rlcfg& g = nav.lcg();
    walk_grammar_tree(nav, [&](SymbolId s, Position start) {
        if (g.is_terminal(s)) table[g.terminal_bytes[s]] = std::min(table[g.terminal_bytes[s]], start);
    });
    return table;
}

PrimaryIndex build_lcg_index(const LcgNavigator& nav, IndexOptions options) {
    return PrimaryIndex(nav, lcg_split_points(nav), lcg_char_leftmost(nav), options);
}

Position occurs_before(const PrimaryIndex& index, const LcgNavigator& nav, Position i, Position j,
                       std::uint64_t* candidates) {
    check_range(nav, i, j);
    if (i > j) throw InvalidArgument("occurs_before needs a nonempty range");
    if (i == j) {
        if (candidates) *candidates = 1;
        return index.leftmost(i, i, i);
    }
    const std::vector<Position> m = split_candidates(nav, i, j);
    if (candidates) *candidates = m.size();
    Position best = index.not_found();
    for (Position q : m) best = std::min(best, index.leftmost(i, q, j));
    return best;
}

LzParse lz_parse_lcg(const PrimaryIndex& index, const LcgNavigator& nav, ParseStats* stats) {
    const std::uint64_t n = nav.length();
    LzParse parse;
    parse.text_length = n;
    if (stats) {
        stats->phrases.clear();
        stats->total_calls = 0;
    }
    Position i = 1;
    while (i <= n) {
        const std::uint8_t c = nav.access(i);
        const Position first = index.char_leftmost(c);
        if (first >= i) {
            parse.phrases.push_back(LzPhrase::literal(c));
            if (stats) stats->phrases.push_back({1, 0});
            ++i;
            continue;
        }
        const detail::PhraseMatch m =
            detail::longest_earlier(n - i + 1, first, [&](std::uint64_t len, Position& where) {
                where = occurs_before(index, nav, i, i + len - 1);
                return where < i;
            });
        if (m.source >= i || nav.fingerprint(m.source, m.source + m.length - 1) != nav.fingerprint(i, i + m.length - 1)) {
            throw InvariantViolation("phrase at " + std::to_string(i) + " has no valid source; fingerprint collision suspected");
        }
        parse.phrases.push_back(LzPhrase::copy(m.source, m.length));
        if (stats) {
            stats->phrases.push_back({m.length, m.calls});
            stats->total_calls += m.calls;
        }
        i += m.length;
    }
    return parse;
}

LzParse lcg_to_lz(const Rlcfg& lcg, std::uint64_t seed, ParseStats* stats, IndexOptions options) {
    for (unsigned attempt = 0;; ++attempt) {
        try {
            const LcgNavigator nav(lcg, FingerprintContext::from_seed(attempt_seed(seed, attempt)));
            const PrimaryIndex index = build_lcg_index(nav, options);
            LzParse parse = lz_parse_lcg(index, nav, stats);
            if (stats) stats->attempts = attempt + 1;
            return parse;
        } catch (const InvariantViolation&) {
            if (attempt >= kMaxCollisionRetries) throw;
        }
    }
}

}  // namespace gramconv
