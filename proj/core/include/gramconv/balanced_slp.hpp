#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "gramconv/fingerprint.hpp"
#include "gramconv/slp.hpp"
#include "gramconv/text_oracle.hpp"

namespace gramconv {

/// Height reduction strategy. Implementations return an SLP over the same
/// alphabet with the same expansion and no unreachable rules.
class Balancer {
public:
    virtual ~Balancer() = default;
    virtual Slp balance(const Slp& slp) const = 0;
    virtual std::string name() const = 0;
};

/// Rebuilds every nonterminal bottom-up as the AVL concatenation of its
/// children's rebuilt versions (hash-consed, so equal pairs share a rule).
/// Height is at most kAlpha * log2(n) + kBeta; size is O(g log n) in the
/// worst case.
class AvlBalancer final : public Balancer {
public:
    static constexpr double kAlpha = 1.45;
    static constexpr double kBeta = 1.0;

    Slp balance(const Slp& slp) const override;
    std::string name() const override { return "avl"; }
};

/// Height bound promised by AvlBalancer for a text of length n.
double balanced_height_bound(std::uint64_t n);

/// A height-reduced SLP with per-symbol lengths, heights and fingerprints,
/// answering access / fingerprint queries in O(height).
class BalancedSlp final : public TextOracle {
public:
    /// Balances `input` with `balancer` and annotates the result.
    BalancedSlp(const Slp& input, const FingerprintContext& ctx, const Balancer& balancer);
    BalancedSlp(const Slp& input, const FingerprintContext& ctx) : BalancedSlp(input, ctx, AvlBalancer{}) {}

    /// Annotates `slp` as is, without height reduction (it is pruned of
    /// unreachable rules).
    static BalancedSlp annotate(const Slp& slp, const FingerprintContext& ctx);

    const Slp& slp() const noexcept { return slp_; }
    const SymbolMeta& meta() const noexcept { return meta_; }
    std::uint32_t height() const noexcept { return meta_.height[slp_.root]; }
    std::size_t num_rules() const noexcept { return slp_.num_rules(); }

    Fingerprint symbol_fingerprint(SymbolId s) const { return fp_[s]; }
    std::uint64_t symbol_power(SymbolId s) const { return pw_[s]; }
    std::uint64_t symbol_length(SymbolId s) const { return meta_.exp_len[s]; }

    std::uint64_t length() const override { return meta_.exp_len[slp_.root]; }
    std::uint8_t access(Position i) const override;
    Fingerprint fingerprint(Position i, Position j) const override;
    const FingerprintContext& context() const override { return ctx_; }

    /// Fingerprint piece for exp(s)[lo..hi] (1-based within exp(s)).
    FingerprintPiece piece(SymbolId s, std::uint64_t lo, std::uint64_t hi) const;

    /// lce on suffixes T[i..] and T[i2..].
    std::uint64_t lce(Position i, Position i2) const;

private:
    BalancedSlp(Slp slp, const FingerprintContext& ctx, int);

    FingerprintPiece whole(SymbolId s) const { return {fp_[s], pw_[s]}; }
    FingerprintPiece prefix_piece(SymbolId s, std::uint64_t m) const;
    FingerprintPiece suffix_piece(SymbolId s, std::uint64_t lo) const;
    FingerprintPiece join(FingerprintPiece a, FingerprintPiece b) const {
        return {ctx_.concat(a.fp, a.pw, b.fp), ctx_.mul(a.pw, b.pw)};
    }

    Slp slp_;
    SymbolMeta meta_;
    FingerprintContext ctx_;
    std::vector<SymbolId> left_;
    std::vector<SymbolId> right_;
    std::vector<Fingerprint> fp_;
    std::vector<std::uint64_t> pw_;
};

inline BalancedSlp balance(const Slp& slp, const FingerprintContext& ctx) { return BalancedSlp(slp, ctx); }

}  // namespace gramconv
