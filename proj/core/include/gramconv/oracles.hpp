#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "gramconv/lcg.hpp"
#include "gramconv/lz_parse.hpp"
#include "gramconv/slp.hpp"

namespace gramconv {

/// Greedy LZ parse straight from the definition (sources may overlap the
/// phrase). Quadratic or worse; for small texts.
LzParse naive_lz(std::string_view text);

/// max_k d_k / k as an exact fraction, d_k = number of distinct k-mers.
struct Delta {
    std::uint64_t num = 0;
    std::uint64_t den = 1;
    double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
};

inline constexpr std::uint64_t kDeltaMaxLength = 5000;
inline constexpr std::uint64_t kPrimaryOracleMaxLength = 300;

/// Throws InvalidArgument for n > kDeltaMaxLength or an empty text.
Delta naive_delta(std::string_view text);

/// A primary occurrence: its start and the text position aligned to the
/// end of the first grammar-tree child it touches.
struct PrimaryOccurrence {
    Position start;
    Position split;
    friend bool operator==(const PrimaryOccurrence&, const PrimaryOccurrence&) = default;
    friend auto operator<=>(const PrimaryOccurrence&, const PrimaryOccurrence&) = default;
};

/// Every primary occurrence of T[i..k] by scanning the grammar tree.
/// Throws InvalidArgument for n > kPrimaryOracleMaxLength.
std::vector<PrimaryOccurrence> naive_primary_occurrences(const Slp& slp, Position i, Position k);
/// Same over an LCG; run rules have children [first copy, rest].
std::vector<PrimaryOccurrence> naive_primary_occurrences(const Rlcfg& lcg, Position i, Position k);

}  // namespace gramconv
