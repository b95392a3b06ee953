#include "level_trace.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace gramconv::testing {

std::vector<LevelNode> level_nodes(const LevelTrace& trace, std::uint32_t k) {
    std::vector<LevelNode> out;
    std::uint64_t pos = 1;
    for (const auto& item : trace.levels.at(k)) {
        out.push_back({pos, pos + item.exp_len - 1, item.symbol});
        pos += item.exp_len;
    }
    return out;
}

std::uint64_t worst_side_difference(const LevelTrace& trace, std::uint32_t top, std::size_t a, std::size_t b,
                                    std::size_t len, std::string* report) {
    std::uint64_t worst = 0;
    std::ostringstream log;
    for (std::uint32_t k = 0; k <= top && k < trace.levels.size(); ++k) {
        const auto nodes = level_nodes(trace, k);
        auto inside = [&](std::size_t off) {
            std::set<std::pair<std::uint64_t, SymbolId>> s;
            for (const auto& nd : nodes) {
                if (nd.start >= off + 1 && nd.end <= off + len) s.insert({nd.start - off - 1, nd.symbol});
            }
            return s;
        };
        const auto first = inside(a);
        const auto second = inside(b);
        std::uint64_t left = 0;
        std::uint64_t right = 0;
        auto count = [&](const auto& from, const auto& other, std::uint64_t& l, std::uint64_t& r) {
            std::uint64_t cl = 0;
            std::uint64_t cr = 0;
            for (const auto& e : from) {
                if (other.count(e)) continue;
                (e.first < len / 2 ? cl : cr) += 1;
            }
            l = std::max(l, cl);
            r = std::max(r, cr);
        };
        count(first, second, left, right);
        count(second, first, left, right);
        worst = std::max({worst, left, right});
        log << "level " << k << ": " << first.size() << "/" << second.size() << " nodes, diff " << left << "+" << right
            << '\n';
    }
    if (report) *report = log.str();
    return worst;
}

}  // namespace gramconv::testing
