#include "gramconv/range_min_grid.hpp"

#include <algorithm>
#include <bit>
#include <limits>

namespace gramconv {

RangeMinGrid::RangeMinGrid(std::vector<Point> points) {
    std::sort(points.begin(), points.end(), [](const Point& a, const Point& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    const std::size_t m = points.size();
    xs_.reserve(m);
    for (const auto& p : points) xs_.push_back(p.x);

    Level base;
    base.ys.reserve(m);
    base.values.reserve(m);
    for (const auto& p : points) {
        base.ys.push_back(p.y);
        base.values.push_back(p.value);
    }
    levels_.push_back(std::move(base));
    for (std::size_t width = 1; width < m; width *= 2) {
        const Level& prev = levels_.back();
        Level next;
        next.ys.resize(m);
        next.values.resize(m);
        for (std::size_t start = 0; start < m; start += 2 * width) {
            std::size_t a = start;
            std::size_t b = std::min(start + width, m);
            const std::size_t a_end = b;
            const std::size_t b_end = std::min(start + 2 * width, m);
            std::size_t out = start;
            while (a < a_end || b < b_end) {
                const bool take_a = b >= b_end || (a < a_end && prev.ys[a] <= prev.ys[b]);
                const std::size_t src = take_a ? a++ : b++;
                next.ys[out] = prev.ys[src];
                next.values[out] = prev.values[src];
                ++out;
            }
        }
        levels_.push_back(std::move(next));
    }

    for (auto& level : levels_) {
        const std::size_t blocks = (m + kBlock - 1) / kBlock;
        std::vector<std::uint64_t> block_min(blocks, std::numeric_limits<std::uint64_t>::max());
        for (std::size_t t = 0; t < m; ++t) block_min[t / kBlock] = std::min(block_min[t / kBlock], level.values[t]);
        level.sparse.push_back(std::move(block_min));
        for (std::size_t span = 1; 2 * span <= blocks; span *= 2) {
            const auto& prev = level.sparse.back();
            std::vector<std::uint64_t> next(blocks - 2 * span + 1);
            for (std::size_t b = 0; b < next.size(); ++b) next[b] = std::min(prev[b], prev[b + span]);
            level.sparse.push_back(std::move(next));
        }
    }
}

std::uint64_t RangeMinGrid::Level::min_in(std::size_t lo, std::size_t hi) const {
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    const std::size_t first_full = (lo + kBlock - 1) / kBlock;
    const std::size_t last_full = hi / kBlock;  // exclusive
    if (first_full >= last_full) {
        for (std::size_t t = lo; t < hi; ++t) best = std::min(best, values[t]);
        return best;
    }
    for (std::size_t t = lo; t < first_full * kBlock; ++t) best = std::min(best, values[t]);
    for (std::size_t t = last_full * kBlock; t < hi; ++t) best = std::min(best, values[t]);
    const std::size_t count = last_full - first_full;
    const int j = std::bit_width(count) - 1;
    const std::size_t span = std::size_t{1} << j;
    best = std::min({best, sparse[j][first_full], sparse[j][last_full - span]});
    return best;
}

std::optional<std::uint64_t> RangeMinGrid::range_min(std::uint32_t x1, std::uint32_t x2, std::uint32_t y1,
                                                     std::uint32_t y2) const {
    if (x1 > x2 || y1 > y2 || xs_.empty()) return std::nullopt;
    std::size_t a = std::lower_bound(xs_.begin(), xs_.end(), x1) - xs_.begin();
    std::size_t b = std::upper_bound(xs_.begin(), xs_.end(), x2) - xs_.begin();
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    bool found = false;
    auto visit = [&](std::size_t level, std::size_t start) {
        const Level& lv = levels_[level];
        const std::size_t end = std::min(start + (std::size_t{1} << level), xs_.size());
        const auto first = lv.ys.begin() + static_cast<std::ptrdiff_t>(start);
        const auto last = lv.ys.begin() + static_cast<std::ptrdiff_t>(end);
        const std::size_t lo = std::lower_bound(first, last, y1) - lv.ys.begin();
        const std::size_t hi = std::upper_bound(first, last, y2) - lv.ys.begin();
        if (lo < hi) {
            best = std::min(best, lv.min_in(lo, hi));
            found = true;
        }
    };
    // Canonical decomposition of [a, b) into aligned power-of-two blocks.
    for (std::size_t level = 0; a < b; ++level) {
        const std::size_t width = std::size_t{1} << level;
        if (a & width) {
            visit(level, a);
            a += width;
        }
        if (a < b && (b & width)) {
            b -= width;
            visit(level, b);
        }
    }
    if (!found) return std::nullopt;
    return best;
}

}  // namespace gramconv
