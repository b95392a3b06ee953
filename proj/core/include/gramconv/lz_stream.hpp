#pragma once

#include <cstdint>

#include "gramconv/lz_parse.hpp"
#include "gramconv/primary_index.hpp"
#include "gramconv/seed.hpp"
#include "gramconv/slp.hpp"

namespace gramconv {

/// LZ parse by sliding three pointers i <= j <= k over the text and asking
/// the index for leftmost primary occurrences. O(n) leftmost() calls.
///
/// Throws InvariantViolation when a reported source does not reproduce the
/// phrase (a fingerprint collision).
LzParse lz_parse_slp(const PrimaryIndex& index, ParseStats* stats = nullptr);

/// Balances `slp`, builds the index and runs lz_parse_slp, retrying with a
/// fresh fingerprint seed up to kMaxCollisionRetries times before rethrowing.
LzParse slp_to_lz_stream(const Slp& slp, std::uint64_t seed, IndexOptions options = {}, ParseStats* stats = nullptr);

}  // namespace gramconv
