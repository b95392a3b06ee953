#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "gramconv/balanced_slp.hpp"
#include "gramconv/lz_parse.hpp"
#include "gramconv/primary_index.hpp"

namespace gramconv {

/// SLP for a substring T[begin..end] built on top of the text's SLP: the
/// O(height) maximal parent symbols covering the range, chained left to
/// right by fresh binary rules. The parent grammar is left untouched.
struct SubstringSlp {
    const BalancedSlp* parent = nullptr;
    Position begin = 1;
    Position end = 0;
    std::vector<SymbolId> pieces;  // parent symbols, left to right
    /// Fresh rule r defines id parent->slp().num_symbols() + r.
    std::vector<std::pair<SymbolId, SymbolId>> fresh_rules;
    SymbolId root = 0;

    std::uint64_t length() const noexcept { return end + 1 - begin; }
    std::string expand() const;
    /// phi of the expansion, composed from the pieces.
    Fingerprint fingerprint() const;
};

SubstringSlp extract_substring_slp(const BalancedSlp& text, Position i, Position j);

/// Finds the leftmost occurrence of a pattern SLP inside the text SLP.
/// Implementations are stateless between calls.
class OccurrenceEngine {
public:
    virtual ~OccurrenceEngine() = default;
    /// Leftmost start of `pattern` in `text`, or text.length() + 1.
    virtual Position leftmost_occurrence(const SubstringSlp& pattern, const BalancedSlp& text) const = 0;
    virtual std::string name() const = 0;
};

/// Rolls the pattern fingerprint across the streamed text: O(n) per call,
/// exact whp.
class FingerprintScanEngine final : public OccurrenceEngine {
public:
    Position leftmost_occurrence(const SubstringSlp& pattern, const BalancedSlp& text) const override;
    std::string name() const override { return "scan"; }
};

/// Uses the primary index: minimum of leftmost(i, j, k) over every split of
/// a pattern of at most `max_pattern` bytes. Longer patterns go to the scan
/// engine. The pattern must be a substring SLP of the indexed text.
class IndexAssistedEngine final : public OccurrenceEngine {
public:
    static constexpr std::uint64_t kDefaultMaxPattern = 64;

    explicit IndexAssistedEngine(const PrimaryIndex& index, std::uint64_t max_pattern = kDefaultMaxPattern)
        : index_(&index), max_pattern_(max_pattern) {}

    Position leftmost_occurrence(const SubstringSlp& pattern, const BalancedSlp& text) const override;
    std::string name() const override { return "index"; }

private:
    const PrimaryIndex* index_;
    std::uint64_t max_pattern_;
};

/// LZ parse by exponential search on the phrase length, testing each
/// candidate T[i..j] with an extracted substring SLP and the engine.
LzParse lz_parse_fcpm(const BalancedSlp& text, const OccurrenceEngine& engine, ParseStats* stats = nullptr);

enum class EngineKind : std::uint8_t { kScan, kIndex };

/// Driver with the same retry protocol as slp_to_lz_stream.
LzParse slp_to_lz_fcpm(const Slp& slp, std::uint64_t seed, EngineKind engine, ParseStats* stats = nullptr);

}  // namespace gramconv
