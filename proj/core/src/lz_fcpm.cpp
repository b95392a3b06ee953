#include "gramconv/lz_fcpm.hpp"

#include <algorithm>

#include "gramconv/errors.hpp"
#include "gramconv/lz_stream.hpp"
#include "phrase_search.hpp"

namespace gramconv {

std::string SubstringSlp::expand() const {
    const Slp& g = parent->slp();
    std::string out;
    out.reserve(length());
    for (SymbolId piece : pieces) {
        Slp sub{g.terminal_bytes, g.rules, piece};
        for_each_terminal(sub, [&](SymbolId a) { out.push_back(static_cast<char>(g.terminal_bytes[a])); });
    }
    return out;
}

Fingerprint SubstringSlp::fingerprint() const {
    const FingerprintContext& ctx = parent->context();
    Fingerprint fp = 0;
    std::uint64_t pw = 1;
    for (SymbolId piece : pieces) {
        fp = ctx.concat(fp, pw, parent->symbol_fingerprint(piece));
        pw = ctx.mul(pw, parent->symbol_power(piece));
    }
    return fp;
}

SubstringSlp extract_substring_slp(const BalancedSlp& text, Position i, Position j) {
    if (i == 0 || i > j || j > text.length()) {
        throw InvalidArgument("substring [" + std::to_string(i) + ", " + std::to_string(j) + "] out of range");
    }
    const Slp& g = text.slp();
    SubstringSlp out;
    out.parent = &text;
    out.begin = i;
    out.end = j;

    SymbolId s = g.root;
    std::uint64_t lo = i;
    std::uint64_t hi = j;
    std::vector<SymbolId> left_side;   // collected right to left
    std::vector<SymbolId> right_side;  // collected left to right
    while (true) {
        if (lo == 1 && hi == text.symbol_length(s)) {
            left_side.push_back(s);
            break;
        }
        const auto [l, r] = g.rule(s);
        const std::uint64_t len = text.symbol_length(l);
        if (hi <= len) {
            s = l;
            continue;
        }
        if (lo > len) {
            lo -= len;
            hi -= len;
            s = r;
            continue;
        }
        // Suffix of l starting at lo.
        SymbolId a = l;
        while (lo != 1) {
            const auto [al, ar] = g.rule(a);
            const std::uint64_t alen = text.symbol_length(al);
            if (lo > alen) {
                lo -= alen;
                a = ar;
            } else {
                left_side.push_back(ar);
                a = al;
            }
        }
        left_side.push_back(a);
        // Prefix of r of length hi - len.
        SymbolId b = r;
        std::uint64_t m = hi - len;
        while (m != text.symbol_length(b)) {
            const auto [bl, br] = g.rule(b);
            const std::uint64_t blen = text.symbol_length(bl);
            if (m <= blen) {
                b = bl;
            } else {
                right_side.push_back(bl);
                m -= blen;
                b = br;
            }
        }
        right_side.push_back(b);
        break;
    }
    out.pieces.assign(left_side.rbegin(), left_side.rend());
    out.pieces.insert(out.pieces.end(), right_side.begin(), right_side.end());

    const auto base = static_cast<SymbolId>(g.num_symbols());
    out.root = out.pieces.front();
    for (std::size_t t = 1; t < out.pieces.size(); ++t) {
        out.fresh_rules.emplace_back(out.root, out.pieces[t]);
        out.root = base + static_cast<SymbolId>(out.fresh_rules.size() - 1);
    }
    return out;
}

Position FingerprintScanEngine::leftmost_occurrence(const SubstringSlp& pattern, const BalancedSlp& text) const {
    const std::uint64_t n = text.length();
    const std::uint64_t m = pattern.length();
    if (m == 0 || m > n) return n + 1;
    const FingerprintContext& ctx = text.context();
    const Fingerprint target = pattern.fingerprint();
    const std::uint64_t x_m = ctx.power(m);
    const std::uint64_t inv_x = ctx.inverse(ctx.base());

    TerminalCursor head(text.slp());
    TerminalCursor tail(text.slp());
    Fingerprint window = 0;
    std::uint64_t pw = 1;
    for (std::uint64_t t = 0; t < m; ++t) {
        pw = ctx.mul(pw, ctx.base());
        window = ctx.add(window, ctx.mul(FingerprintContext::code(head.next_byte()), pw));
    }
    for (Position start = 1;; ++start) {
        if (window == target) return start;
        if (start + m > n) return n + 1;
        // Drop T[start], shift, append T[start + m].
        const std::uint64_t out_code = FingerprintContext::code(tail.next_byte());
        window = ctx.mul(ctx.sub(window, ctx.mul(out_code, ctx.base())), inv_x);
        window = ctx.add(window, ctx.mul(FingerprintContext::code(head.next_byte()), x_m));
    }
}

Position IndexAssistedEngine::leftmost_occurrence(const SubstringSlp& pattern, const BalancedSlp& text) const {
    const std::uint64_t m = pattern.length();
    if (m > max_pattern_) return FingerprintScanEngine{}.leftmost_occurrence(pattern, text);
    const Position i = pattern.begin;
    const Position k = pattern.end;
    if (m == 1) return index_->leftmost(i, i, i);
    Position best = index_->not_found();
    for (Position j = i; j < k; ++j) best = std::min(best, index_->leftmost(i, j, k));
    return best;
}

LzParse lz_parse_fcpm(const BalancedSlp& text, const OccurrenceEngine& engine, ParseStats* stats) {
    const std::uint64_t n = text.length();
    const auto first = slp_char_leftmost(text);
    LzParse parse;
    parse.text_length = n;
    if (stats) {
        stats->phrases.clear();
        stats->total_calls = 0;
    }

    Position i = 1;
    while (i <= n) {
        const std::uint8_t c = text.access(i);
        if (first[c] >= i) {
            parse.phrases.push_back(LzPhrase::literal(c));
            if (stats) stats->phrases.push_back({1, 0});
            ++i;
            continue;
        }
        const detail::PhraseMatch m =
            detail::longest_earlier(n - i + 1, first[c], [&](std::uint64_t len, Position& where) {
                const SubstringSlp pattern = extract_substring_slp(text, i, i + len - 1);
                where = engine.leftmost_occurrence(pattern, text);
                return where < i;
            });
        const std::uint64_t good = m.length;
        const Position src = m.source;
        if (src >= i || text.fingerprint(src, src + good - 1) != text.fingerprint(i, i + good - 1)) {
            throw InvariantViolation("phrase at " + std::to_string(i) + " has no valid source; fingerprint collision suspected");
        }
        parse.phrases.push_back(LzPhrase::copy(src, good));
        if (stats) {
            stats->phrases.push_back({good, m.calls});
            stats->total_calls += m.calls;
        }
        i += good;
    }
    return parse;
}

LzParse slp_to_lz_fcpm(const Slp& slp, std::uint64_t seed, EngineKind engine, ParseStats* stats) {
    const Slp balanced = AvlBalancer{}.balance(slp);
    for (unsigned attempt = 0;; ++attempt) {
        try {
            const BalancedSlp text =
                BalancedSlp::annotate(balanced, FingerprintContext::from_seed(attempt_seed(seed, attempt)));
            LzParse parse;
            if (engine == EngineKind::kIndex) {
                const PrimaryIndex index = build_index(text);
                parse = lz_parse_fcpm(text, IndexAssistedEngine(index), stats);
            } else {
                parse = lz_parse_fcpm(text, FingerprintScanEngine{}, stats);
            }
            if (stats) stats->attempts = attempt + 1;
            return parse;
        } catch (const InvariantViolation&) {
            if (attempt >= kMaxCollisionRetries) throw;
        }
    }
}

}  // namespace gramconv
