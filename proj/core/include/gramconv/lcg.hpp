#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gramconv/slp.hpp"

namespace gramconv {

enum class LcgRuleKind : std::uint8_t { kRun, kBlock };

/// X -> Y^count (run) or X -> Y_1 ... Y_t (block).
struct LcgRule {
    LcgRuleKind kind = LcgRuleKind::kBlock;
    std::vector<SymbolId> children;  // a run stores its single child
    std::uint64_t count = 0;         // run exponent; arity for blocks
    std::uint32_t level = 0;         // 0 when unknown (files without level lines)

    static LcgRule run(SymbolId child, std::uint64_t count, std::uint32_t level = 0) {
        return {LcgRuleKind::kRun, {child}, count, level};
    }
    static LcgRule block(std::vector<SymbolId> children, std::uint32_t level = 0) {
        const std::uint64_t t = children.size();
        return {LcgRuleKind::kBlock, std::move(children), t, level};
    }

    bool is_run() const noexcept { return kind == LcgRuleKind::kRun; }
    /// Number of (virtual) children.
    std::uint64_t arity() const noexcept { return is_run() ? count : children.size(); }
    /// q-th child, 1-based.
    SymbolId child(std::uint64_t q) const noexcept { return is_run() ? children[0] : children[q - 1]; }
};

/// Run-length context-free grammar. Ids as in Slp: terminals 0..sigma-1,
/// rule r defines sigma + r and references only smaller ids.
struct Rlcfg {
    std::vector<std::uint8_t> terminal_bytes;
    std::vector<LcgRule> rules;
    SymbolId root = 0;

    std::size_t sigma() const noexcept { return terminal_bytes.size(); }
    std::size_t num_symbols() const noexcept { return terminal_bytes.size() + rules.size(); }
    std::size_t num_rules() const noexcept { return rules.size(); }
    bool is_terminal(SymbolId s) const noexcept { return s < terminal_bytes.size(); }
    const LcgRule& rule(SymbolId s) const { return rules[s - terminal_bytes.size()]; }
};

struct LcgMeta {
    std::vector<std::uint64_t> exp_len;
    std::vector<std::uint32_t> depth;  // longest root-to-leaf path, in rules
};

/// Structural check; returns a list of problems (empty when valid).
std::vector<std::string> validate(const Rlcfg& lcg);

/// Throws InvalidArgument on an invalid grammar.
LcgMeta compute_meta(const Rlcfg& lcg);

std::string expand(const Rlcfg& lcg);

/// Streams exp(root) terminal by terminal; the stack holds (symbol, remaining
/// repetitions) so runs are not unrolled.
template <typename Emit>
void for_each_terminal(const Rlcfg& lcg, Emit&& emit) {
    struct Frame {
        SymbolId sym;
        std::uint64_t next;  // next child index, 1-based
    };
    if (lcg.is_terminal(lcg.root)) {
        emit(lcg.root);
        return;
    }
    std::vector<Frame> stack{{lcg.root, 1}};
    while (!stack.empty()) {
        Frame& top = stack.back();
        const LcgRule& r = lcg.rule(top.sym);
        if (top.next > r.arity()) {
            stack.pop_back();
            continue;
        }
        const SymbolId c = r.child(top.next++);
        if (lcg.is_terminal(c)) {
            emit(c);
        } else {
            stack.push_back({c, 1});
        }
    }
}

/// `LCG v1` text format. Level lines are written when any level is known.
Rlcfg read_lcg(std::istream& in, const std::string& source = {});
void write_lcg(std::ostream& out, const Rlcfg& lcg);

}  // namespace gramconv
