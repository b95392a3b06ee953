#include "gramconv/lz_stream.hpp"

#include "gramconv/balanced_slp.hpp"
#include "gramconv/errors.hpp"

namespace gramconv {

LzParse lz_parse_slp(const PrimaryIndex& index, ParseStats* stats) {
    const TextOracle& text = index.text();
    const std::uint64_t n = text.length();
    LzParse parse;
    parse.text_length = n;
    if (stats) {
        stats->phrases.clear();
        stats->total_calls = 0;
    }

    std::uint64_t calls = 0;
    auto leftmost = [&](Position i, Position j, Position k) {
        ++calls;
        return index.leftmost(i, j, k);
    };

    Position i = 1;
    while (i <= n) {
        calls = 0;
        const std::uint8_t c = text.access(i);
        if (index.char_leftmost(c) >= i) {
            parse.phrases.push_back(LzPhrase::literal(c));
            if (stats) stats->phrases.push_back({1, 0});
            ++i;
            continue;
        }
        Position j = i;
        Position k = i - 1;
        Position t = 0;
        do {
            ++k;
            // T[i..k] occurs left of i with split j, and with no split in [i, j-1].
            while (k < n && leftmost(i, j, k + 1) < i) ++k;
            t = leftmost(i, j, k);
            if (k < n) {
                // Advance j past every split that fails to place T[i..k+1] left of i.
                while (j <= k && leftmost(i, j, k + 1) >= i) ++j;
            } else {
                j = n + 1;
            }
        } while (j <= k);

        const std::uint64_t len = k - i + 1;
        if (t >= i || text.fingerprint(t, t + len - 1) != text.fingerprint(i, k)) {
            throw InvariantViolation("phrase at " + std::to_string(i) + " has no valid source (candidate " +
                                     std::to_string(t) + "); fingerprint collision suspected");
        }
        parse.phrases.push_back(LzPhrase::copy(t, len));
        if (stats) {
            stats->phrases.push_back({len, calls});
            stats->total_calls += calls;
        }
        i = k + 1;
    }
    return parse;
}

LzParse slp_to_lz_stream(const Slp& slp, std::uint64_t seed, IndexOptions options, ParseStats* stats) {
    const Slp balanced = AvlBalancer{}.balance(slp);
    for (unsigned attempt = 0;; ++attempt) {
        try {
            const BalancedSlp text = BalancedSlp::annotate(balanced, FingerprintContext::from_seed(attempt_seed(seed, attempt)));
            const PrimaryIndex index = build_index(text, options);
            LzParse parse = lz_parse_slp(index, stats);
            if (stats) stats->attempts = attempt + 1;
            return parse;
        } catch (const InvariantViolation&) {
            if (attempt >= kMaxCollisionRetries) throw;
        }
    }
}

}  // namespace gramconv
