#pragma once

#include <algorithm>
#include <cstdint>

#include "gramconv/slp.hpp"

namespace gramconv::detail {

struct PhraseMatch {
    std::uint64_t length;
    Position source;
    std::uint64_t calls;
};

/// Longest len in [1, max_len] with test(len, where) true, where test is
/// monotone and true for len = 1 (with source `first`). Doubling then
/// bisection: at most 2 * ceil(log2(len + 1)) + 1 tests.
template <typename Test>
PhraseMatch longest_earlier(std::uint64_t max_len, Position first, Test&& test) {
    PhraseMatch m{1, first, 0};
    std::uint64_t bad = max_len + 1;
    Position where = 0;
    auto probe = [&](std::uint64_t len) {
        ++m.calls;
        if (!test(len, where)) return false;
        m.length = len;
        m.source = where;
        return true;
    };
    while (m.length < max_len) {
        const std::uint64_t len = std::min(m.length * 2, max_len);
        if (!probe(len)) {
            bad = len;
            break;
        }
    }
    while (bad - m.length > 1) {
        const std::uint64_t mid = m.length + (bad - m.length) / 2;
        if (!probe(mid)) bad = mid;
    }
    return m;
}

}  // namespace gramconv::detail
