#pragma once

#include <charconv>
#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "gramconv/errors.hpp"

namespace gramconv::detail {

/// Whitespace-tokenizing line reader with positional errors.
class LineReader {
public:
    LineReader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

    /// Next line split into tokens; false at end of input. Blank lines are
    /// rejected because none of the formats allows them.
    bool next(std::vector<std::string_view>& tokens) {
        if (!std::getline(in_, line_)) return false;
        ++line_no_;
        if (!line_.empty() && line_.back() == '\r') line_.pop_back();
        tokens.clear();
        std::size_t pos = 0;
        while (pos < line_.size()) {
            while (pos < line_.size() && (line_[pos] == ' ' || line_[pos] == '\t')) ++pos;
            std::size_t end = pos;
            while (end < line_.size() && line_[end] != ' ' && line_[end] != '\t') ++end;
            if (end > pos) tokens.emplace_back(line_.data() + pos, end - pos);
            pos = end;
        }
        if (tokens.empty()) fail("unexpected blank line");
        return true;
    }

    void require(std::vector<std::string_view>& tokens, const char* what) {
        if (!next(tokens)) fail(std::string("unexpected end of input, expected ") + what);
    }

    void expect_end() {
        std::vector<std::string_view> tokens;
        while (std::getline(in_, line_)) {
            ++line_no_;
            if (!line_.empty() && line_.back() == '\r') line_.pop_back();
            if (line_.find_first_not_of(" \t") != std::string::npos) fail("trailing garbage after final line");
        }
    }

    std::uint64_t number(std::string_view token, std::uint64_t max_value, const char* what) const {
        std::uint64_t value = 0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc() || ptr != token.data() + token.size()) {
            fail(std::string("malformed ") + what + " '" + std::string(token) + "'");
        }
        if (value > max_value) {
            fail(std::string(what) + " " + std::string(token) + " out of range (max " + std::to_string(max_value) + ")");
        }
        return value;
    }

    [[noreturn]] void fail(const std::string& what) const { throw FormatError(source_, line_no_, what); }

    std::size_t line_no() const noexcept { return line_no_; }

private:
    std::istream& in_;
    std::string source_;
    std::string line_;
    std::size_t line_no_ = 0;
};

}  // namespace gramconv::detail
