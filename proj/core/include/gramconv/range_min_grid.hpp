#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace gramconv {

/// Static point set answering "minimum value inside an axis-aligned
/// rectangle". Layout: a merge-sort tree over x whose levels keep their
/// points ordered by y, with one block-decomposed range-minimum structure per
/// level. O(m log m) words, O(log^2 m) per query.
class RangeMinGrid {
public:
    struct Point {
        std::uint32_t x;
        std::uint32_t y;
        std::uint64_t value;
    };

    RangeMinGrid() = default;
    explicit RangeMinGrid(std::vector<Point> points);

    std::size_t size() const noexcept { return xs_.size(); }

    /// Minimum value over points with x1 <= x <= x2 and y1 <= y <= y2.
    std::optional<std::uint64_t> range_min(std::uint32_t x1, std::uint32_t x2, std::uint32_t y1,
                                           std::uint32_t y2) const;

private:
    struct Level {
        std::vector<std::uint32_t> ys;      // y values, sorted inside each 2^level block
        std::vector<std::uint64_t> values;  // aligned with ys
        std::vector<std::vector<std::uint64_t>> sparse;  // sparse[j][b]: min of blocks b..b+2^j-1

        std::uint64_t min_in(std::size_t lo, std::size_t hi) const;  // [lo, hi), nonempty
    };

    static constexpr std::size_t kBlock = 32;

    std::vector<std::uint32_t> xs_;  // x of every point, sorted
    std::vector<Level> levels_;
};

}  // namespace gramconv
