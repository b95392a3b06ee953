#include "gramconv/lcg_access.hpp"

#include <algorithm>

#include "gramconv/errors.hpp"

namespace gramconv {

LcgNavigator::LcgNavigator(Rlcfg lcg, const FingerprintContext& ctx)
    : lcg_(std::move(lcg)), meta_(compute_meta(lcg_)), ctx_(ctx), inv_x_(ctx.inverse(ctx.base())) {
    const std::size_t sigma = lcg_.sigma();
    const std::size_t total = lcg_.num_symbols();
    fp_.resize(total);
    pw_.resize(total);
    level_.assign(total, 0);
    for (std::size_t a = 0; a < sigma; ++a) {
        fp_[a] = ctx_.of_byte(lcg_.terminal_bytes[a]);
        pw_[a] = ctx_.base();
    }
    offset_.resize(lcg_.rules.size());
    for (std::size_t r = 0; r < lcg_.rules.size(); ++r) {
        const LcgRule& rule = lcg_.rules[r];
        const std::size_t id = sigma + r;
        std::uint32_t child_level = 0;
        for (SymbolId c : rule.children) child_level = std::max(child_level, level_[c]);
        level_[id] = rule.level != 0 ? rule.level : child_level + 1;
        if (level_[id] <= child_level) throw InvalidArgument("rule " + std::to_string(r) + " is not above its children");
        offset_[r] = prefix_len_.size();
        if (rule.is_run()) {
            const SymbolId y = rule.children[0];
            fp_[id] = ctx_.repeat(fp_[y], pw_[y], rule.count);
            pw_[id] = ctx_.power(meta_.exp_len[id]);
            continue;
        }
        Fingerprint fp = 0;
        std::uint64_t pw = 1;
        std::uint64_t len = 0;
        prefix_len_.push_back(0);
        prefix_fp_.push_back(0);
        prefix_pw_.push_back(1);
        for (SymbolId c : rule.children) {
            fp = ctx_.concat(fp, pw, fp_[c]);
            pw = ctx_.mul(pw, pw_[c]);
            len += meta_.exp_len[c];
            prefix_len_.push_back(len);
            prefix_fp_.push_back(fp);
            prefix_pw_.push_back(pw);
        }
        fp_[id] = fp;
        pw_[id] = pw;
    }
}

std::uint64_t LcgNavigator::child_prefix_length(SymbolId s, std::uint64_t q) const {
    const LcgRule& rule = lcg_.rule(s);
    if (rule.is_run()) return q * meta_.exp_len[rule.children[0]];
    return prefix_len_[offset_[s - lcg_.sigma()] + q];
}

std::pair<std::uint64_t, std::uint64_t> LcgNavigator::locate(SymbolId s, std::uint64_t off) const {
    const LcgRule& rule = lcg_.rule(s);
    if (rule.is_run()) {
        const std::uint64_t len = meta_.exp_len[rule.children[0]];
        const std::uint64_t q = (off - 1) / len + 1;
        return {q, (q - 1) * len};
    }
    const auto first = prefix_len_.begin() + static_cast<std::ptrdiff_t>(offset_[s - lcg_.sigma()]);
    const auto last = first + static_cast<std::ptrdiff_t>(rule.children.size()) + 1;
    // First prefix length >= off; child q ends there.
    const auto it = std::lower_bound(first + 1, last, off);
    const auto q = static_cast<std::uint64_t>(it - first);
    return {q, *(it - 1)};
}

std::uint8_t LcgNavigator::access(Position i) const {
    check_range(*this, i, i);
    SymbolId s = lcg_.root;
    std::uint64_t off = i;
    while (!lcg_.is_terminal(s)) {
        const auto [q, before] = locate(s, off);
        off -= before;
        s = lcg_.rule(s).child(q);
    }
    return lcg_.terminal_bytes[s];
}

FingerprintPiece LcgNavigator::prefix_piece(std::uint64_t m) const {
    FingerprintPiece acc;
    SymbolId s = lcg_.root;
    while (m > 0) {
        if (m == meta_.exp_len[s]) return {ctx_.concat(acc.fp, acc.pw, fp_[s]), ctx_.mul(acc.pw, pw_[s])};
        const auto [q, before] = locate(s, m);
        const LcgRule& rule = lcg_.rule(s);
        FingerprintPiece head;
        if (rule.is_run()) {
            const SymbolId y = rule.children[0];
            head = {ctx_.repeat(fp_[y], pw_[y], q - 1), ctx_.power(before)};
        } else {
            const std::size_t o = offset_[s - lcg_.sigma()] + q - 1;
            head = {prefix_fp_[o], prefix_pw_[o]};
        }
        acc = {ctx_.concat(acc.fp, acc.pw, head.fp), ctx_.mul(acc.pw, head.pw)};
        m -= before;
        s = rule.child(q);
    }
    return acc;
}

Fingerprint LcgNavigator::fingerprint(Position i, Position j) const {
    check_range(*this, i, j);
    if (i > j) return 0;
    const Fingerprint whole = prefix_piece(j).fp;
    const Fingerprint head = prefix_piece(i - 1).fp;
    // Shift down by x^{i-1}.
    std::uint64_t scale = 1;
    std::uint64_t b = inv_x_;
    for (std::uint64_t e = i - 1; e > 0; e >>= 1) {
        if (e & 1) scale = ctx_.mul(scale, b);
        b = ctx_.mul(b, b);
    }
    return ctx_.mul(ctx_.sub(whole, head), scale);
}

std::vector<LcgNavigator::PathNode> LcgNavigator::path(Position p) const {
    check_range(*this, p, p);
    std::vector<PathNode> out;
    SymbolId s = lcg_.root;
    Position start = 1;
    while (true) {
        out.push_back({s, start, start + meta_.exp_len[s] - 1});
        if (lcg_.is_terminal(s)) break;
        const auto [q, before] = locate(s, p - start + 1);
        start += before;
        s = lcg_.rule(s).child(q);
    }
    return out;
}

LcgNavigator::PathNode LcgNavigator::node_at_level(Position p, std::uint32_t k) const {
    check_range(*this, p, p);
    SymbolId s = lcg_.root;
    Position start = 1;
    while (level_[s] > k) {
        const auto [q, before] = locate(s, p - start + 1);
        start += before;
        s = lcg_.rule(s).child(q);
    }
    return {s, start, start + meta_.exp_len[s] - 1};
}

std::vector<Position> split_candidates(const LcgNavigator& nav, Position i, Position j) {
    if (i == 0 || j <= i || j > nav.length()) {
        throw InvalidArgument("split candidates need 1 <= i < j <= n, got [" + std::to_string(i) + ", " +
                              std::to_string(j) + "]");
    }
    std::vector<Position> m{i, j - 1};
    const auto left_path = nav.path(i);
    const auto right_path = nav.path(j);
    // Node of S_k covering the path's leaf: the highest one at level <= k.
    auto on_path = [&](const std::vector<LcgNavigator::PathNode>& path, std::uint32_t k) {
        for (const auto& node : path) {
            if (nav.level(node.symbol) <= k) return node;
        }
        return path.back();
    };

    for (std::uint32_t k = 1; k <= nav.top_level(); ++k) {
        bool any = false;
        Position e = on_path(left_path, k).end;
        for (unsigned c = 0; c < kCandidatesPerSide && e <= j - 1; ++c) {
            m.push_back(e);
            any = true;
            e = nav.node_at_level(e + 1, k).end;
        }
        Position b = on_path(right_path, k).start - 1;
        for (unsigned c = 0; c < kCandidatesPerSide && b >= i; ++c) {
            m.push_back(b);
            b = nav.node_at_level(b, k).start - 1;
        }
        // Blocks only grow with k: no end inside the range now means none later.
        if (!any) break;
    }
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
    return m;
}

}  // namespace gramconv
