#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "gramconv/fingerprint.hpp"

namespace gramconv {

using SymbolId = std::uint32_t;
using Position = std::uint64_t;  // 1-based text positions throughout

/// Formats cap the text length at 2^62.
inline constexpr std::uint64_t kMaxTextLength = std::uint64_t{1} << 62;

/// Binary straight-line program over a byte alphabet.
///
/// Ids 0..sigma-1 are terminals (terminal_bytes[id] is the byte); rule i
/// defines nonterminal sigma + i and may only reference smaller ids.
struct Slp {
    std::vector<std::uint8_t> terminal_bytes;
    std::vector<std::pair<SymbolId, SymbolId>> rules;
    SymbolId root = 0;

    std::size_t sigma() const noexcept { return terminal_bytes.size(); }
    std::size_t num_symbols() const noexcept { return terminal_bytes.size() + rules.size(); }
    std::size_t num_rules() const noexcept { return rules.size(); }
    bool is_terminal(SymbolId id) const noexcept { return id < terminal_bytes.size(); }
    const std::pair<SymbolId, SymbolId>& rule(SymbolId id) const { return rules[id - sigma()]; }
};

/// Per-symbol expansion lengths and derivation heights. Fingerprints live in
/// BalancedSlp since they depend on the fingerprint context.
struct SymbolMeta {
    std::vector<std::uint64_t> exp_len;
    std::vector<std::uint32_t> height;
};

enum class SlpIssue {
    kEmptyAlphabet,
    kDuplicateTerminal,
    kForwardReference,
    kRootOutOfRange,
    kLengthOverflow,
};

struct ValidationIssue {
    SlpIssue kind;
    std::size_t rule;  // rule index, or npos-like SIZE_MAX when not rule-specific
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    SymbolMeta meta;  // filled only when ok()

    bool ok() const noexcept { return issues.empty(); }
    std::string summary() const;
};

ValidationReport validate(const Slp& slp);

/// Metadata of a grammar that must be valid; throws InvalidArgument otherwise.
SymbolMeta compute_meta(const Slp& slp);

/// exp(root). Linear in n.
std::string expand(const Slp& slp);

/// Calls `emit(terminal_id)` for every text position left to right using a
/// stack bounded by the grammar height; no intermediate strings.
template <class Emit>
void for_each_terminal(const Slp& slp, Emit&& emit) {
    std::vector<SymbolId> stack{slp.root};
    while (!stack.empty()) {
        SymbolId s = stack.back();
        stack.pop_back();
        while (!slp.is_terminal(s)) {
            const auto& [left, right] = slp.rule(s);
            stack.push_back(right);
            s = left;
        }
        emit(s);
    }
}

/// Pull-style left-to-right iterator over the terminals of exp(root).
class TerminalCursor {
public:
    explicit TerminalCursor(const Slp& slp) : slp_(&slp), stack_{slp.root} {}

    bool done() const noexcept { return stack_.empty(); }

    /// Next terminal id; requires !done().
    SymbolId next() {
        SymbolId s = stack_.back();
        stack_.pop_back();
        while (!slp_->is_terminal(s)) {
            const auto& [left, right] = slp_->rule(s);
            stack_.push_back(right);
            s = left;
        }
        return s;
    }

    std::uint8_t next_byte() { return slp_->terminal_bytes[next()]; }

private:
    const Slp* slp_;
    std::vector<SymbolId> stack_;
};

/// Grammar tree: the parse tree pruned so that only the leftmost occurrence of
/// every nonterminal keeps its children.
class GrammarTree {
public:
    static constexpr std::uint32_t kNoChild = UINT32_MAX;

    struct Node {
        SymbolId symbol;
        Position start;
        std::uint32_t left = kNoChild;   // children set only on internal nodes
        std::uint32_t right = kNoChild;

        bool internal() const noexcept { return left != kNoChild; }
    };

    GrammarTree(const Slp& slp, const SymbolMeta& meta);

    const std::vector<Node>& nodes() const noexcept { return nodes_; }
    const Node& root() const { return nodes_.front(); }

    /// Leaf node indices, left to right.
    const std::vector<std::uint32_t>& leaves() const noexcept { return leaves_; }

    /// Start of the internal occurrence of nonterminal `x` (0 if unreachable).
    Position internal_start(SymbolId x) const { return internal_start_[x]; }

    std::size_t internal_count() const noexcept { return nodes_.size() - leaves_.size(); }

private:
    std::vector<Node> nodes_;
    std::vector<std::uint32_t> leaves_;
    std::vector<Position> internal_start_;
};

inline GrammarTree build_grammar_tree(const Slp& slp) { return GrammarTree(slp, compute_meta(slp)); }

/// Line-based `SLP v1` format. `source` names the input in error messages.
Slp read_slp(std::istream& in, const std::string& source = {});
void write_slp(std::ostream& out, const Slp& slp);

/// Removes rules unreachable from the root and renumbers densely (terminals
/// are kept as is).
Slp prune_unreachable(const Slp& slp);

}  // namespace gramconv
