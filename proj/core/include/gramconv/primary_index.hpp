#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "gramconv/balanced_slp.hpp"
#include "gramconv/prefix_range.hpp"
#include "gramconv/range_min_grid.hpp"
#include "gramconv/text_oracle.hpp"

namespace gramconv {

/// One grid point: a rule (and, for variable-arity rules, a child boundary)
/// at its internal grammar-tree occurrence. The left part T[split-left_len+1
/// .. split] is exp(Y) and the right part T[split+1 .. split+right_len] is
/// what follows Y inside the rule.
struct SplitPoint {
    Position split;
    std::uint64_t left_len;
    std::uint64_t right_len;
    SymbolId rule;
    std::uint32_t child = 0;  // boundary index inside the rule (0 for binary rules)
};

enum class SortMode : std::uint8_t {
    kFingerprint,  // whp comparator through lce/lcs
    kNaive,        // character-by-character comparator
};

struct IndexOptions {
    PrefixRangeKind prefix_range = PrefixRangeKind::kZFast;
    SortMode sort = SortMode::kFingerprint;
};

/// Grammar index for leftmost primary occurrences: the multiset of left
/// parts sorted co-lexicographically (x axis), the multiset of right parts
/// sorted lexicographically (y axis), prefix-range indexes over both and a
/// grid with range-minimum over split positions.
class PrimaryIndex {
public:
    PrimaryIndex(const TextOracle& text, std::vector<SplitPoint> points, const std::array<Position, 256>& char_leftmost,
                 IndexOptions options = {});

    PrimaryIndex(const PrimaryIndex&) = delete;
    PrimaryIndex& operator=(const PrimaryIndex&) = delete;
    PrimaryIndex(PrimaryIndex&&) = default;

    const TextOracle& text() const noexcept { return *text_; }
    std::uint64_t length() const noexcept { return text_->length(); }
    Position not_found() const noexcept { return text_->length() + 1; }

    /// Leftmost start of a primary occurrence of T[i..k] whose splitting
    /// point aligns with T[j], or not_found(). Requires i <= j < k <= n, or
    /// i = j = k which is answered from the leftmost-character table.
    Position leftmost(Position i, Position j, Position k) const;

    /// Leftmost occurrence of `byte` in T, or not_found().
    Position char_leftmost(std::uint8_t byte) const noexcept { return char_leftmost_[byte]; }

    std::size_t num_points() const noexcept { return points_.size(); }
    const SplitPoint& point(std::size_t idx) const { return points_[idx]; }
    /// Rank of point `idx` on the x (colex of left part) and y (lex of right part) axes.
    std::uint32_t x_rank(std::size_t idx) const { return x_rank_[idx]; }
    std::uint32_t y_rank(std::size_t idx) const { return y_rank_[idx]; }

    const PrefixRangeIndex& left_index() const noexcept { return *left_; }
    const PrefixRangeIndex& right_index() const noexcept { return *right_; }
    const RangeMinGrid& grid() const noexcept { return grid_; }

private:
    const TextOracle* text_;
    std::vector<SplitPoint> points_;
    std::vector<std::uint32_t> x_rank_;
    std::vector<std::uint32_t> y_rank_;
    std::unique_ptr<PrefixRangeIndex> left_;
    std::unique_ptr<PrefixRangeIndex> right_;
    RangeMinGrid grid_;
    std::array<Position, 256> char_leftmost_;
};

/// Split points (one per rule, at its grammar-tree occurrence) and the
/// leftmost-character table of an SLP.
std::vector<SplitPoint> slp_split_points(const BalancedSlp& slp);
std::array<Position, 256> slp_char_leftmost(const BalancedSlp& slp);

/// Builds the index over a balanced SLP. The SLP must outlive the index.
PrimaryIndex build_index(const BalancedSlp& slp, IndexOptions options = {});

}  // namespace gramconv
