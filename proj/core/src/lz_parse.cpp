#include "gramconv/lz_parse.hpp"

#include <array>
#include <ostream>

#include "gramconv/errors.hpp"
#include "line_reader.hpp"

namespace gramconv {

std::vector<Position> LzParse::starts() const {
    std::vector<Position> out;
    out.reserve(phrases.size());
    Position pos = 1;
    for (const auto& ph : phrases) {
        out.push_back(pos);
        pos += ph.length;
    }
    return out;
}

std::string decode(const LzParse& parse) {
    std::string out;
    out.reserve(parse.text_length);
    for (const auto& ph : parse.phrases) {
        if (ph.is_literal()) {
            out.push_back(static_cast<char>(ph.byte));
            continue;
        }
        const Position start = out.size() + 1;
        if (ph.length == 0 || ph.source == 0 || ph.source >= start) {
            throw InvalidArgument("copy at position " + std::to_string(start) + " has invalid source " +
                                  std::to_string(ph.source));
        }
        for (std::uint64_t t = 0; t < ph.length; ++t) out.push_back(out[ph.source - 1 + t]);
    }
    if (out.size() != parse.text_length) {
        throw InvalidArgument("phrases expand to " + std::to_string(out.size()) + " bytes, header says " +
                              std::to_string(parse.text_length));
    }
    return out;
}

std::string check_lz_invariants(const LzParse& parse, std::string_view text) {
    if (parse.text_length != text.size()) return "text length mismatch";
    std::array<bool, 256> seen{};
    Position pos = 1;
    for (std::size_t k = 0; k < parse.phrases.size(); ++k) {
        const auto& ph = parse.phrases[k];
        const std::string at = "phrase " + std::to_string(k) + " at " + std::to_string(pos);
        if (ph.length == 0 || pos - 1 + ph.length > text.size()) return at + ": bad length";
        if (ph.is_literal()) {
            const auto b = static_cast<std::uint8_t>(text[pos - 1]);
            if (ph.byte != b) return at + ": literal byte differs from text";
            if (seen[b]) return at + ": literal for a byte seen earlier";
        } else {
            if (ph.source == 0 || ph.source >= pos) return at + ": source not strictly to the left";
            for (std::uint64_t t = 0; t < ph.length; ++t) {
                if (text[ph.source - 1 + t] != text[pos - 1 + t]) return at + ": copy content differs";
            }
        }
        for (std::uint64_t t = 0; t < ph.length; ++t) seen[static_cast<std::uint8_t>(text[pos - 1 + t])] = true;
        pos += ph.length;
    }
    if (pos != text.size() + 1) return "phrases do not cover the text";
    return {};
}

LzParse read_lz(std::istream& in, const std::string& source) {
    detail::LineReader reader(in, source);
    std::vector<std::string_view> tok;
    reader.require(tok, "header");
    if (tok.size() != 2 || tok[0] != "LZ" || tok[1] != "v1") reader.fail("expected header 'LZ v1'");
    reader.require(tok, "length line");
    if (tok.size() != 2 || tok[0] != "n") reader.fail("expected 'n <length>'");
    LzParse parse;
    parse.text_length = reader.number(tok[1], kMaxTextLength, "text length");
    if (parse.text_length == 0) reader.fail("empty text is not supported");

    std::uint64_t covered = 0;
    while (reader.next(tok)) {
        if (tok[0] == "L") {
            if (tok.size() != 2) reader.fail("expected 'L <byte>'");
            parse.phrases.push_back(LzPhrase::literal(static_cast<std::uint8_t>(reader.number(tok[1], 255, "byte"))));
            covered += 1;
        } else if (tok[0] == "C") {
            if (tok.size() != 3) reader.fail("expected 'C <src> <len>'");
            const Position src = reader.number(tok[1], covered, "copy source");
            const std::uint64_t len = reader.number(tok[2], parse.text_length - covered, "copy length");
            if (src == 0) reader.fail("copy source must be at least 1");
            if (len == 0) reader.fail("copy length must be positive");
            parse.phrases.push_back(LzPhrase::copy(src, len));
            covered += len;
        } else {
            reader.fail("unknown phrase tag '" + std::string(tok[0]) + "'");
        }
        if (covered > parse.text_length) reader.fail("phrases exceed declared length");
    }
    if (covered != parse.text_length) {
        throw FormatError(source, 0, "phrases cover " + std::to_string(covered) + " of " +
                                         std::to_string(parse.text_length) + " bytes");
    }
    return parse;
}

void write_lz(std::ostream& out, const LzParse& parse) {
    out << "LZ v1\nn " << parse.text_length << '\n';
    for (const auto& ph : parse.phrases) {
        if (ph.is_literal()) {
            out << "L " << static_cast<unsigned>(ph.byte) << '\n';
        } else {
            out << "C " << ph.source << ' ' << ph.length << '\n';
        }
    }
}

}  // namespace gramconv
