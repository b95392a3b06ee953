#include "gramconv/oracles.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "gramconv/errors.hpp"

namespace gramconv {

LzParse naive_lz(std::string_view text) {
    LzParse parse;
    parse.text_length = text.size();
    const std::size_t n = text.size();
    std::size_t i = 0;
    while (i < n) {
        std::size_t best_len = 0;
        std::size_t best_src = 0;
        for (std::size_t t = 0; t < i; ++t) {
            std::size_t len = 0;
            while (i + len < n && text[t + len] == text[i + len]) ++len;
            if (len > best_len) {
                best_len = len;
                best_src = t;
            }
        }
        if (best_len == 0) {
            parse.phrases.push_back(LzPhrase::literal(static_cast<std::uint8_t>(text[i])));
            ++i;
        } else {
            parse.phrases.push_back(LzPhrase::copy(best_src + 1, best_len));
            i += best_len;
        }
    }
    return parse;
}

Delta naive_delta(std::string_view text) {
    const std::size_t n = text.size();
    if (n == 0) throw InvalidArgument("delta of the empty text is undefined");
    if (n > kDeltaMaxLength) throw InvalidArgument("naive_delta is limited to n <= " + std::to_string(kDeltaMaxLength));
    std::vector<std::uint32_t> sa(n);
    std::iota(sa.begin(), sa.end(), 0U);
    std::sort(sa.begin(), sa.end(), [&](std::uint32_t a, std::uint32_t b) { return text.substr(a) < text.substr(b); });
    // d_k = #suffixes of length >= k whose k-prefix differs from the previous
    // suffix (in sorted order) of length >= k. Equivalently count, for every
    // suffix, the k in (lcp with predecessor, len] range.
    std::vector<std::int64_t> diff(n + 2, 0);
    for (std::size_t r = 0; r < n; ++r) {
        const std::size_t len = n - sa[r];
        std::size_t lcp = 0;
        if (r > 0) {
            const std::string_view a = text.substr(sa[r - 1]);
            const std::string_view b = text.substr(sa[r]);
            while (lcp < a.size() && lcp < b.size() && a[lcp] == b[lcp]) ++lcp;
        }
        // Suffix r contributes a new k-mer for every k in (lcp, len].
        diff[lcp + 1] += 1;
        diff[len + 1] -= 1;
    }
    Delta best{0, 1};
    std::int64_t d = 0;
    for (std::size_t k = 1; k <= n; ++k) {
        d += diff[k];
        const auto dk = static_cast<std::uint64_t>(d);
        if (dk * best.den > best.num * k) best = {dk, k};
    }
    const std::uint64_t g = std::gcd(best.num, best.den);
    return {best.num / g, best.den / g};
}

namespace {

// Node of an explicit grammar tree: symbol, start, and child start offsets.
struct TreeNode {
    Position start;
    Position end;
    std::vector<Position> child_ends;  // end positions of the children (tree children only)
};

std::vector<PrimaryOccurrence> scan(const std::string& text, const std::vector<TreeNode>& internal, Position i,
                                    Position k) {
    const std::uint64_t n = text.size();
    if (i == 0 || i > k || k > n) throw InvalidArgument("pattern range out of bounds");
    const std::string_view pattern = std::string_view(text).substr(i - 1, k - i + 1);
    const std::uint64_t m = pattern.size();
    std::vector<PrimaryOccurrence> out;
    for (const TreeNode& node : internal) {
        // Occurrence [t, t+m-1] inside the node, crossing at least one child boundary.
        for (std::size_t q = 0; q + 1 < node.child_ends.size(); ++q) {
            const Position boundary = node.child_ends[q];  // last position of child q
            const Position child_start = q == 0 ? node.start : node.child_ends[q - 1] + 1;
            // First child touched is q: start in [child_start, boundary], end > boundary.
            for (Position t = child_start; t <= boundary; ++t) {
                if (t + m - 1 <= boundary || t + m - 1 > node.end) continue;
                if (std::string_view(text).substr(t - 1, m) == pattern) out.push_back({t, boundary});
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

std::vector<PrimaryOccurrence> naive_primary_occurrences(const Slp& slp, Position i, Position k) {
    const SymbolMeta meta = compute_meta(slp);
    if (meta.exp_len[slp.root] > kPrimaryOracleMaxLength) {
        throw InvalidArgument("naive_primary_occurrences is limited to n <= " + std::to_string(kPrimaryOracleMaxLength));
    }
    const std::string text = expand(slp);
    const GrammarTree tree(slp, meta);
    std::vector<TreeNode> internal;
    for (const auto& node : tree.nodes()) {
        if (node.left == GrammarTree::kNoChild) continue;
        const Position mid = node.start + meta.exp_len[tree.nodes()[node.left].symbol] - 1;
        internal.push_back({node.start, node.start + meta.exp_len[node.symbol] - 1, {mid, node.start + meta.exp_len[node.symbol] - 1}});
    }
    return scan(text, internal, i, k);
}

std::vector<PrimaryOccurrence> naive_primary_occurrences(const Rlcfg& lcg, Position i, Position k) {
    const LcgMeta meta = compute_meta(lcg);
    if (meta.exp_len[lcg.root] > kPrimaryOracleMaxLength) {
        throw InvalidArgument("naive_primary_occurrences is limited to n <= " + std::to_string(kPrimaryOracleMaxLength));
    }
    const std::string text = expand(lcg);
    std::vector<TreeNode> internal;
    std::vector<bool> seen(lcg.num_symbols(), false);
    std::vector<std::pair<SymbolId, Position>> stack{{lcg.root, 1}};
    while (!stack.empty()) {
        const auto [s, start] = stack.back();
        stack.pop_back();
        if (lcg.is_terminal(s) || seen[s]) continue;
        seen[s] = true;
        const LcgRule& rule = lcg.rule(s);
        TreeNode node{start, start + meta.exp_len[s] - 1, {}};
        if (rule.is_run()) {
            node.child_ends = {start + meta.exp_len[rule.children[0]] - 1, node.end};
            stack.push_back({rule.children[0], start});
        } else {
            Position p = start;
            for (SymbolId c : rule.children) {
                p += meta.exp_len[c];
                node.child_ends.push_back(p - 1);
            }
            for (std::size_t q = rule.children.size(); q-- > 0;) {
                const Position child_start = q == 0 ? start : node.child_ends[q - 1] + 1;
                stack.push_back({rule.children[q], child_start});
            }
        }
        internal.push_back(std::move(node));
    }
    return scan(text, internal, i, k);
}

}  // namespace gramconv
