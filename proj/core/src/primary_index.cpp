#include "gramconv/primary_index.hpp"

#include <algorithm>
#include <numeric>

#include "gramconv/errors.hpp"

namespace gramconv {

namespace {

Window left_window(const SplitPoint& p) { return {p.split, p.left_len}; }
Window right_window(const SplitPoint& p) { return {p.split + 1, p.right_len}; }

}  // namespace

PrimaryIndex::PrimaryIndex(const TextOracle& text, std::vector<SplitPoint> points,
                           const std::array<Position, 256>& char_leftmost, IndexOptions options)
    : text_(&text), points_(std::move(points)), char_leftmost_(char_leftmost) {
    const std::size_t g = points_.size();
    if (g >= UINT32_MAX) throw InvalidArgument("too many grid points");
    auto cmp = options.sort == SortMode::kNaive ? window_compare_naive : window_compare;
    auto tie = [&](std::size_t a, std::size_t b) {
        return points_[a].rule != points_[b].rule ? points_[a].rule < points_[b].rule
                                                  : points_[a].child < points_[b].child;
    };

    std::vector<std::uint32_t> by_x(g);
    std::iota(by_x.begin(), by_x.end(), 0);
    std::sort(by_x.begin(), by_x.end(), [&](std::uint32_t a, std::uint32_t b) {
        const auto c = cmp(text, Direction::kBackward, left_window(points_[a]), left_window(points_[b]));
        return c != 0 ? c < 0 : tie(a, b);
    });
    std::vector<std::uint32_t> by_y(g);
    std::iota(by_y.begin(), by_y.end(), 0);
    std::sort(by_y.begin(), by_y.end(), [&](std::uint32_t a, std::uint32_t b) {
        const auto c = cmp(text, Direction::kForward, right_window(points_[a]), right_window(points_[b]));
        return c != 0 ? c < 0 : tie(a, b);
    });

    x_rank_.resize(g);
    y_rank_.resize(g);
    std::vector<Window> left_members;
    std::vector<Window> right_members;
    left_members.reserve(g);
    right_members.reserve(g);
    for (std::uint32_t r = 0; r < g; ++r) {
        x_rank_[by_x[r]] = r;
        y_rank_[by_y[r]] = r;
        left_members.push_back(left_window(points_[by_x[r]]));
        right_members.push_back(right_window(points_[by_y[r]]));
    }
    left_ = make_prefix_range(options.prefix_range, text, Direction::kBackward, std::move(left_members));
    right_ = make_prefix_range(options.prefix_range, text, Direction::kForward, std::move(right_members));

    std::vector<RangeMinGrid::Point> grid_points;
    grid_points.reserve(g);
    for (std::size_t idx = 0; idx < g; ++idx) grid_points.push_back({x_rank_[idx], y_rank_[idx], points_[idx].split});
    grid_ = RangeMinGrid(std::move(grid_points));
}

Position PrimaryIndex::leftmost(Position i, Position j, Position k) const {
    const std::uint64_t n = text_->length();
    if (i == 0 || i > j || j > k || k > n) {
        throw InvalidArgument("leftmost(" + std::to_string(i) + ", " + std::to_string(j) + ", " + std::to_string(k) +
                              ") outside 1 <= i <= j <= k <= " + std::to_string(n));
    }
    if (j == k) {
        if (i != k) throw InvalidArgument("leftmost: split must precede the last pattern position");
        return char_leftmost_[text_->access(i)];
    }
    const RankRange xr = left_->prefix_range({j, j - i + 1});
    if (xr.empty()) return not_found();
    const RankRange yr = right_->prefix_range({j + 1, k - j});
    if (yr.empty()) return not_found();
    const auto best = grid_.range_min(static_cast<std::uint32_t>(xr.begin), static_cast<std::uint32_t>(xr.end - 1),
                                      static_cast<std::uint32_t>(yr.begin), static_cast<std::uint32_t>(yr.end - 1));
    if (!best) return not_found();
    const Position p = *best;
    // The prefix-range answers are only trustworthy when nonempty; check
    // that the reported occurrence really matches.
    if (p < j - i + 1 || p + (k - j) > n) return not_found();
    const Position start = p - (j - i);
    if (text_->fingerprint(start, start + (k - i)) != text_->fingerprint(i, k)) return not_found();
    return start;
}

std::vector<SplitPoint> slp_split_points(const BalancedSlp& slp) {
    const Slp& g = slp.slp();
    const GrammarTree tree(g, slp.meta());
    std::vector<SplitPoint> points;
    points.reserve(g.num_rules());
    for (std::size_t id = g.sigma(); id < g.num_symbols(); ++id) {
        const auto x = static_cast<SymbolId>(id);
        const auto [left, right] = g.rule(x);
        const Position start = tree.internal_start(x);
        if (start == 0) continue;  // unreachable rule
        const std::uint64_t ll = slp.symbol_length(left);
        points.push_back({start + ll - 1, ll, slp.symbol_length(right), x, 0});
    }
    return points;
}

std::array<Position, 256> slp_char_leftmost(const BalancedSlp& slp) {
    std::array<Position, 256> table;
    table.fill(slp.length() + 1);
    const Slp& g = slp.slp();
    const GrammarTree tree(g, slp.meta());
    for (std::uint32_t v : tree.leaves()) {
        const auto& node = tree.nodes()[v];
        if (!g.is_terminal(node.symbol)) continue;
        Position& slot = table[g.terminal_bytes[node.symbol]];
        slot = std::min(slot, node.start);
    }
    return table;
}

PrimaryIndex build_index(const BalancedSlp& slp, IndexOptions options) {
    return PrimaryIndex(slp, slp_split_points(slp), slp_char_leftmost(slp), options);
}

}  // namespace gramconv
