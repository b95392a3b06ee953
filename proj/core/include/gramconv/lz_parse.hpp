#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "gramconv/slp.hpp"

namespace gramconv {

/// One LZ phrase: a fresh literal byte, or a copy of `length` bytes starting
/// at 1-based position `source` (which may overlap the phrase itself).
struct LzPhrase {
    enum class Kind : std::uint8_t { kLiteral, kCopy };

    Kind kind = Kind::kLiteral;
    std::uint8_t byte = 0;
    Position source = 0;
    std::uint64_t length = 1;

    static LzPhrase literal(std::uint8_t b) { return {Kind::kLiteral, b, 0, 1}; }
    static LzPhrase copy(Position src, std::uint64_t len) { return {Kind::kCopy, 0, src, len}; }

    bool is_literal() const noexcept { return kind == Kind::kLiteral; }
    friend bool operator==(const LzPhrase&, const LzPhrase&) = default;
};

struct LzParse {
    std::uint64_t text_length = 0;
    std::vector<LzPhrase> phrases;

    std::size_t size() const noexcept { return phrases.size(); }

    /// 1-based start position of every phrase.
    std::vector<Position> starts() const;
};

/// Expands a parse left to right, copying byte by byte so self-overlapping
/// copies work. Throws InvalidArgument on a source that is not strictly to
/// the left of its phrase or on a length mismatch.
std::string decode(const LzParse& parse);

/// Checks the structural invariants against `text`: phrases concatenate to
/// `text`, copies point strictly left with equal content, and literals are
/// first occurrences. Returns an empty string when everything holds.
std::string check_lz_invariants(const LzParse& parse, std::string_view text);

/// Line-based `LZ v1` format.
LzParse read_lz(std::istream& in, const std::string& source = {});
void write_lz(std::ostream& out, const LzParse& parse);

/// Per-phrase instrumentation filled in by the parsers.
struct ParseStats {
    struct Phrase {
        std::uint64_t length;
        std::uint64_t calls;  // occurrence tests spent on this phrase
    };
    std::vector<Phrase> phrases;
    std::uint64_t total_calls = 0;
    unsigned attempts = 1;  // 1 + number of collision retries
};

}  // namespace gramconv
