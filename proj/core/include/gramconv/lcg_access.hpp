#pragma once

#include <cstdint>
#include <vector>

#include "gramconv/fingerprint.hpp"
#include "gramconv/lcg.hpp"
#include "gramconv/text_oracle.hpp"

namespace gramconv {

/// Access and fingerprints over an Rlcfg by descent through its virtual
/// parse tree. Child lookup is a binary search on per-rule prefix lengths;
/// run children are computed arithmetically.
class LcgNavigator final : public TextOracle {
public:
    LcgNavigator(Rlcfg lcg, const FingerprintContext& ctx);

    const Rlcfg& lcg() const noexcept { return lcg_; }
    const LcgMeta& meta() const noexcept { return meta_; }

    std::uint64_t length() const override { return meta_.exp_len[lcg_.root]; }
    std::uint8_t access(Position i) const override;
    Fingerprint fingerprint(Position i, Position j) const override;
    const FingerprintContext& context() const override { return ctx_; }

    std::uint64_t symbol_length(SymbolId s) const { return meta_.exp_len[s]; }
    Fingerprint symbol_fingerprint(SymbolId s) const { return fp_[s]; }
    std::uint64_t symbol_power(SymbolId s) const { return pw_[s]; }
    /// Parsing level of a symbol (0 for terminals). Taken from the grammar
    /// when recorded there, otherwise 1 + the highest child level.
    std::uint32_t level(SymbolId s) const { return level_[s]; }
    std::uint32_t top_level() const { return level_[lcg_.root]; }
    /// Longest root-to-leaf path.
    std::uint32_t depth() const { return meta_.depth[lcg_.root]; }

    /// Length of Y_1 .. Y_q for rule symbol s (q <= arity).
    std::uint64_t child_prefix_length(SymbolId s, std::uint64_t q) const;

    struct PathNode {
        SymbolId symbol;
        Position start;  // first text position covered
        Position end;    // last text position covered
    };
    /// Parse-tree nodes from the root down to the leaf covering `p`.
    std::vector<PathNode> path(Position p) const;

    /// The node of the level-k sequence S_k covering `p`.
    PathNode node_at_level(Position p, std::uint32_t k) const;

private:
    /// Child q of s covering offset `off` (1-based in exp(s)); returns the
    /// child index and its starting offset minus one.
    std::pair<std::uint64_t, std::uint64_t> locate(SymbolId s, std::uint64_t off) const;
    FingerprintPiece prefix_piece(std::uint64_t m) const;

    Rlcfg lcg_;
    LcgMeta meta_;
    FingerprintContext ctx_;
    std::uint64_t inv_x_;
    std::vector<Fingerprint> fp_;
    std::vector<std::uint64_t> pw_;
    std::vector<std::uint32_t> level_;
    std::vector<std::size_t> offset_;           // per rule, into the flat arrays
    std::vector<std::uint64_t> prefix_len_;     // block rules: 0, |Y_1|, |Y_1 Y_2|, ...
    std::vector<Fingerprint> prefix_fp_;        // matching fingerprints
    std::vector<std::uint64_t> prefix_pw_;      // matching x powers
};

/// Block ends taken from each end of the range at every level.
inline constexpr unsigned kCandidatesPerSide = 3;

/// Candidate splitting positions for T[i..j] (1 <= i < j <= n): the first
/// and the last kCandidatesPerSide block ends of every level S_k inside
/// [i, j-1]. Sorted, contains i and j - 1.
std::vector<Position> split_candidates(const LcgNavigator& nav, Position i, Position j);

}  // namespace gramconv
