#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "gramconv/text_oracle.hpp"

namespace gramconv {

enum class Direction : std::uint8_t { kForward, kBackward };

/// A substring of the text read in some direction: forward windows start at
/// `anchor` and extend right, backward windows end at `anchor` and are read
/// right to left (i.e. they stand for the reversed substring).
struct Window {
    Position anchor = 1;
    std::uint64_t length = 0;
};

/// Character at 0-based offset `off` of the window as read in `dir`.
std::uint8_t window_char(const TextOracle& text, Direction dir, Window w, std::uint64_t off);

/// Fingerprint identifying the first `len` characters of the window as read.
/// Backward windows hash the underlying forward substring, which is a
/// one-to-one encoding of the reversed prefix.
Fingerprint window_prefix_fp(const TextOracle& text, Direction dir, Window w, std::uint64_t len);

/// Longest common prefix of two windows as read in `dir`.
std::uint64_t window_lcp(const TextOracle& text, Direction dir, Window a, Window b);

/// Full order of two windows as read in `dir` (lex for forward, colex of the
/// underlying substrings for backward). Fingerprint-based; correct whp.
std::strong_ordering window_compare(const TextOracle& text, Direction dir, Window a, Window b);

/// Same order computed one character at a time (deterministic, O(length)).
std::strong_ordering window_compare_naive(const TextOracle& text, Direction dir, Window a, Window b);

/// Half-open range [begin, end) of 0-based member ranks.
struct RankRange {
    std::size_t begin = 0;
    std::size_t end = 0;

    bool empty() const noexcept { return begin >= end; }
    std::size_t size() const noexcept { return empty() ? 0 : end - begin; }
    friend bool operator==(const RankRange&, const RankRange&) = default;
};

enum class PrefixRangeKind : std::uint8_t { kBinarySearch, kZFast };

/// Prefix-range queries over a sorted multiset of windows.
///
/// When some member has the pattern as a prefix the answer is exact (whp).
/// When none does the answer may be arbitrary; callers verify a candidate
/// with one fingerprint comparison.
class PrefixRangeIndex {
public:
    virtual ~PrefixRangeIndex() = default;

    virtual RankRange prefix_range(Window pattern) const = 0;
    virtual PrefixRangeKind kind() const noexcept = 0;

    std::size_t size() const noexcept { return members_.size(); }
    Direction direction() const noexcept { return dir_; }
    const Window& member(std::size_t rank) const { return members_[rank]; }
    const TextOracle& text() const noexcept { return *text_; }

    /// True when the member at `rank` really starts with `pattern`.
    bool verify(std::size_t rank, Window pattern) const;

protected:
    /// Members must be sorted in `dir` order; adjacent pairs are checked and
    /// InvalidArgument is thrown on an inversion.
    PrefixRangeIndex(const TextOracle& text, Direction dir, std::vector<Window> members);

    const TextOracle* text_;
    Direction dir_;
    std::vector<Window> members_;
    std::vector<std::uint64_t> adjacent_lcp_;  // lcp(member r, member r+1)
};

/// Binary search with fingerprint-accelerated comparisons:
/// O(log m) comparisons of O(log n) fingerprints each.
class BinarySearchPrefixRange final : public PrefixRangeIndex {
public:
    BinarySearchPrefixRange(const TextOracle& text, Direction dir, std::vector<Window> members);

    RankRange prefix_range(Window pattern) const override;
    PrefixRangeKind kind() const noexcept override { return PrefixRangeKind::kBinarySearch; }

private:
    // Order of the member truncated to |pattern| against the pattern.
    std::strong_ordering truncated_compare(std::size_t rank, Window pattern) const;
};

/// z-fast trie over the implicit members: a compacted trie whose nodes are
/// found by hashing 2-fattest prefixes, so a query is a fat binary search
/// costing O(log |P|) fingerprint probes.
class ZFastPrefixRange final : public PrefixRangeIndex {
public:
    ZFastPrefixRange(const TextOracle& text, Direction dir, std::vector<Window> members);

    RankRange prefix_range(Window pattern) const override;
    PrefixRangeKind kind() const noexcept override { return PrefixRangeKind::kZFast; }

    std::size_t node_count() const noexcept { return nodes_.size(); }

private:
    struct Node {
        std::uint64_t depth;         // length of the node's extent
        std::uint64_t parent_depth;  // extent length of the parent (0 for the root)
        std::uint32_t begin;         // member ranks [begin, end)
        std::uint32_t end;
        std::uint32_t first_child;   // children occupy child_ids_[first_child, last_child)
        std::uint32_t last_child;
        std::uint8_t branch;         // character at offset parent_depth
    };

    struct Slot {
        std::uint64_t key = 0;
        std::uint32_t node = UINT32_MAX;
    };

    static std::uint64_t slot_key(std::uint64_t len, Fingerprint fp) noexcept;
    void insert_handle(std::uint64_t len, Fingerprint fp, std::uint32_t node);
    std::uint32_t find_handle(std::uint64_t len, Fingerprint fp) const;
    std::uint32_t child_by_char(std::uint32_t node, std::uint8_t c) const;

    std::vector<Node> nodes_;  // nodes_[0] is the root (depth 0)
    std::vector<std::uint32_t> child_ids_;
    std::vector<Slot> table_;
    std::uint64_t mask_ = 0;
};

std::unique_ptr<PrefixRangeIndex> make_prefix_range(PrefixRangeKind kind, const TextOracle& text, Direction dir,
                                                    std::vector<Window> members);

/// The 2-fattest number in (a, b]: the one with the most trailing zeros.
std::uint64_t two_fattest(std::uint64_t a, std::uint64_t b) noexcept;

}  // namespace gramconv
