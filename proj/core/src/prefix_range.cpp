#include "gramconv/prefix_range.hpp"

#include <algorithm>
#include <bit>

#include "gramconv/errors.hpp"

namespace gramconv {

std::uint8_t window_char(const TextOracle& text, Direction dir, Window w, std::uint64_t off) {
    return dir == Direction::kForward ? text.access(w.anchor + off) : text.access(w.anchor - off);
}

Fingerprint window_prefix_fp(const TextOracle& text, Direction dir, Window w, std::uint64_t len) {
    if (len == 0) return 0;
    return dir == Direction::kForward ? text.fingerprint(w.anchor, w.anchor + len - 1)
                                      : text.fingerprint(w.anchor - len + 1, w.anchor);
}

std::uint64_t window_lcp(const TextOracle& text, Direction dir, Window a, Window b) {
    const std::uint64_t m = std::min(a.length, b.length);
    if (m == 0) return 0;
    return dir == Direction::kForward ? lce(text, a.anchor, b.anchor, m) : lcs(text, a.anchor, b.anchor, m);
}

std::strong_ordering window_compare(const TextOracle& text, Direction dir, Window a, Window b) {
    const std::uint64_t l = window_lcp(text, dir, a, b);
    if (l == std::min(a.length, b.length)) return a.length <=> b.length;
    return window_char(text, dir, a, l) <=> window_char(text, dir, b, l);
}

std::strong_ordering window_compare_naive(const TextOracle& text, Direction dir, Window a, Window b) {
    const std::uint64_t m = std::min(a.length, b.length);
    for (std::uint64_t off = 0; off < m; ++off) {
        const auto ca = window_char(text, dir, a, off);
        const auto cb = window_char(text, dir, b, off);
        if (ca != cb) return ca <=> cb;
    }
    return a.length <=> b.length;
}

std::uint64_t two_fattest(std::uint64_t a, std::uint64_t b) noexcept {
    // Clear every bit below the highest bit where a and b differ.
    const int msb = 63 - std::countl_zero(a ^ b);
    return b & (~std::uint64_t{0} << msb);
}

PrefixRangeIndex::PrefixRangeIndex(const TextOracle& text, Direction dir, std::vector<Window> members)
    : text_(&text), dir_(dir), members_(std::move(members)) {
    if (members_.size() >= UINT32_MAX) throw InvalidArgument("too many members for a prefix-range index");
    adjacent_lcp_.reserve(members_.empty() ? 0 : members_.size() - 1);
    for (std::size_t r = 0; r + 1 < members_.size(); ++r) {
        const Window a = members_[r];
        const Window b = members_[r + 1];
        const std::uint64_t l = window_lcp(text, dir, a, b);
        const bool inverted = l == std::min(a.length, b.length)
                                  ? a.length > b.length
                                  : window_char(text, dir, a, l) > window_char(text, dir, b, l);
        if (inverted) throw InvalidArgument("prefix-range members not sorted at rank " + std::to_string(r));
        adjacent_lcp_.push_back(l);
    }
}

bool PrefixRangeIndex::verify(std::size_t rank, Window pattern) const {
    const Window m = members_[rank];
    if (m.length < pattern.length) return false;
    return window_prefix_fp(*text_, dir_, m, pattern.length) == window_prefix_fp(*text_, dir_, pattern, pattern.length);
}

BinarySearchPrefixRange::BinarySearchPrefixRange(const TextOracle& text, Direction dir, std::vector<Window> members)
    : PrefixRangeIndex(text, dir, std::move(members)) {}

std::strong_ordering BinarySearchPrefixRange::truncated_compare(std::size_t rank, Window pattern) const {
    const Window m = members_[rank];
    const std::uint64_t l = window_lcp(*text_, dir_, m, pattern);
    if (l == pattern.length) return std::strong_ordering::equal;
    if (l == m.length) return std::strong_ordering::less;
    return window_char(*text_, dir_, m, l) <=> window_char(*text_, dir_, pattern, l);
}

RankRange BinarySearchPrefixRange::prefix_range(Window pattern) const {
    std::size_t lo = 0;
    std::size_t hi = members_.size();
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (truncated_compare(mid, pattern) < 0) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    const std::size_t begin = lo;
    hi = members_.size();
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (truncated_compare(mid, pattern) <= 0) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    return {begin, lo};
}

ZFastPrefixRange::ZFastPrefixRange(const TextOracle& text, Direction dir, std::vector<Window> members)
    : PrefixRangeIndex(text, dir, std::move(members)) {
    const std::size_t m = members_.size();
    std::vector<std::vector<std::uint32_t>> children;
    auto new_node = [&](std::uint64_t depth, std::uint32_t begin) {
        nodes_.push_back({depth, 0, begin, begin, 0, 0, 0});
        children.emplace_back();
        return static_cast<std::uint32_t>(nodes_.size() - 1);
    };
    new_node(0, 0);
    std::vector<std::uint32_t> stack{0};
    for (std::size_t r = 0; r < m; ++r) {
        const auto rank = static_cast<std::uint32_t>(r);
        if (nodes_[stack.back()].depth != members_[r].length) stack.push_back(new_node(members_[r].length, rank));
        const std::uint64_t next_lcp = r + 1 < m ? adjacent_lcp_[r] : 0;
        while (nodes_[stack.back()].depth > next_lcp) {
            const std::uint32_t v = stack.back();
            stack.pop_back();
            nodes_[v].end = rank + 1;
            if (nodes_[stack.back()].depth < next_lcp) {
                const std::uint32_t w = new_node(next_lcp, nodes_[v].begin);
                children[w].push_back(v);
                stack.push_back(w);
            } else {
                children[stack.back()].push_back(v);
            }
        }
    }
    nodes_[0].end = static_cast<std::uint32_t>(m);

    for (std::uint32_t v = 0; v < nodes_.size(); ++v) {
        nodes_[v].first_child = static_cast<std::uint32_t>(child_ids_.size());
        for (std::uint32_t c : children[v]) {
            nodes_[c].parent_depth = nodes_[v].depth;
            nodes_[c].branch = window_char(text, dir, members_[nodes_[c].begin], nodes_[v].depth);
            child_ids_.push_back(c);
        }
        nodes_[v].last_child = static_cast<std::uint32_t>(child_ids_.size());
    }

    std::size_t capacity = 16;
    while (capacity < 2 * nodes_.size()) capacity *= 2;
    table_.assign(capacity, Slot{});
    mask_ = capacity - 1;
    for (std::uint32_t v = 1; v < nodes_.size(); ++v) {
        const std::uint64_t f = two_fattest(nodes_[v].parent_depth, nodes_[v].depth);
        insert_handle(f, window_prefix_fp(text, dir, members_[nodes_[v].begin], f), v);
    }
}

std::uint64_t ZFastPrefixRange::slot_key(std::uint64_t len, Fingerprint fp) noexcept {
    std::uint64_t k = fp ^ (len * 0x9e3779b97f4a7c15ULL);
    k ^= k >> 31;
    k *= 0xbf58476d1ce4e5b9ULL;
    k ^= k >> 29;
    return k;
}

void ZFastPrefixRange::insert_handle(std::uint64_t len, Fingerprint fp, std::uint32_t node) {
    const std::uint64_t key = slot_key(len, fp);
    std::uint64_t pos = key & mask_;
    while (table_[pos].node != UINT32_MAX) {
        if (table_[pos].key == key) return;  // colliding handle; queries fall back to verification
        pos = (pos + 1) & mask_;
    }
    table_[pos] = {key, node};
}

std::uint32_t ZFastPrefixRange::find_handle(std::uint64_t len, Fingerprint fp) const {
    const std::uint64_t key = slot_key(len, fp);
    std::uint64_t pos = key & mask_;
    while (table_[pos].node != UINT32_MAX) {
        if (table_[pos].key == key) return table_[pos].node;
        pos = (pos + 1) & mask_;
    }
    return UINT32_MAX;
}

std::uint32_t ZFastPrefixRange::child_by_char(std::uint32_t node, std::uint8_t c) const {
    std::uint32_t lo = nodes_[node].first_child;
    std::uint32_t hi = nodes_[node].last_child;
    while (lo < hi) {
        const std::uint32_t mid = lo + (hi - lo) / 2;
        const std::uint8_t b = nodes_[child_ids_[mid]].branch;
        if (b == c) return child_ids_[mid];
        if (b < c) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    return UINT32_MAX;
}

RankRange ZFastPrefixRange::prefix_range(Window pattern) const {
    const std::uint64_t m = pattern.length;
    if (members_.empty()) return {};
    if (m == 0) return {0, members_.size()};
    std::uint64_t a = 0;
    std::uint64_t b = m - 1;
    std::uint32_t cur = 0;
    // Invariant (whp, when the answer is nonempty): the locus's parent depth
    // lies in [a, b] and nodes_[cur].depth == a.
    while (a < b) {
        const std::uint64_t f = two_fattest(a, b);
        const std::uint32_t v = find_handle(f, window_prefix_fp(*text_, dir_, pattern, f));
        if (v != UINT32_MAX && nodes_[v].parent_depth < f && f <= nodes_[v].depth) {
            if (nodes_[v].depth >= m) return {nodes_[v].begin, nodes_[v].end};
            if (nodes_[v].depth <= a) return {};
            a = nodes_[v].depth;
            cur = v;
        } else {
            b = f - 1;
        }
    }
    const std::uint32_t c = child_by_char(cur, window_char(*text_, dir_, pattern, a));
    if (c == UINT32_MAX) return {};
    return {nodes_[c].begin, nodes_[c].end};
}

std::unique_ptr<PrefixRangeIndex> make_prefix_range(PrefixRangeKind kind, const TextOracle& text, Direction dir,
                                                    std::vector<Window> members) {
    if (kind == PrefixRangeKind::kZFast) return std::make_unique<ZFastPrefixRange>(text, dir, std::move(members));
    return std::make_unique<BinarySearchPrefixRange>(text, dir, std::move(members));
}

}  // namespace gramconv
