#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "gramconv/lcg_access.hpp"
#include "gramconv/lz_parse.hpp"
#include "gramconv/primary_index.hpp"

namespace gramconv {

/// One point per (block rule, child boundary q < t) and one per run rule
/// (after the first copy), placed at the rule's internal grammar-tree
/// occurrence. The right part of a point is the rest of the rule.
std::vector<SplitPoint> lcg_split_points(const LcgNavigator& nav);

std::array<Position, 256> lcg_char_leftmost(const LcgNavigator& nav);

/// The navigator must outlive the index.
PrimaryIndex build_lcg_index(const LcgNavigator& nav, IndexOptions options = {});

/// min over q in split_candidates(i, j) of leftmost(i, q, j): the leftmost
/// occurrence of T[i..j], so never above i (whp). `candidates` receives
/// |M(i, j)| when given.
Position occurs_before(const PrimaryIndex& index, const LcgNavigator& nav, Position i, Position j,
                       std::uint64_t* candidates = nullptr);

/// LZ parse by exponential search with occurs_before as the test.
LzParse lz_parse_lcg(const PrimaryIndex& index, const LcgNavigator& nav, ParseStats* stats = nullptr);

/// Navigator + index + parse with the collision-retry protocol.
LzParse lcg_to_lz(const Rlcfg& lcg, std::uint64_t seed, ParseStats* stats = nullptr, IndexOptions options = {});

}  // namespace gramconv
