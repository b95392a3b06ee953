#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gramconv/fingerprint.hpp"
#include "gramconv/slp.hpp"

namespace gramconv {

/// Random access and substring fingerprints over an implicitly stored text.
///
/// Implemented by BalancedSlp, LcgNavigator and (for tests and oracles) by
/// PlainText. Every higher-level query in the library goes through this.
class TextOracle {
public:
    virtual ~TextOracle() = default;

    virtual std::uint64_t length() const = 0;
    /// T[i], 1 <= i <= n.
    virtual std::uint8_t access(Position i) const = 0;
    /// phi(T[i..j]); phi of the empty range (i = j + 1) is 0.
    virtual Fingerprint fingerprint(Position i, Position j) const = 0;
    virtual const FingerprintContext& context() const = 0;
};

/// Longest common extension of T[a..] and T[b..], capped at `max_len`
/// (clamped so neither side runs past n). Fingerprint galloping search;
/// correct whp.
std::uint64_t lce(const TextOracle& text, Position a, Position b, std::uint64_t max_len);

/// Longest common suffix of T[..a_end] and T[..b_end], capped at `max_len`.
std::uint64_t lcs(const TextOracle& text, Position a_end, Position b_end, std::uint64_t max_len);

/// Lexicographic order of T[i..j] against T[i2..j2]. Empty ranges allowed.
std::strong_ordering compare_lex(const TextOracle& text, Position i, Position j, Position i2, Position j2);

/// Co-lexicographic order (order of the reversed substrings).
std::strong_ordering compare_colex(const TextOracle& text, Position i, Position j, Position i2, Position j2);

/// Throws InvalidArgument unless 1 <= i <= j + 1 and j <= n.
void check_range(const TextOracle& text, Position i, Position j);

/// Materialized text with prefix fingerprints. O(n) space; meant for tests,
/// oracles and small inputs.
class PlainText final : public TextOracle {
public:
    PlainText(std::string text, FingerprintContext ctx);

    std::uint64_t length() const override { return text_.size(); }
    std::uint8_t access(Position i) const override;
    Fingerprint fingerprint(Position i, Position j) const override;
    const FingerprintContext& context() const override { return ctx_; }

    const std::string& text() const noexcept { return text_; }

private:
    std::string text_;
    FingerprintContext ctx_;
    std::vector<Fingerprint> prefix_;       // prefix_[t] = phi(T[1..t])
    std::vector<std::uint64_t> inv_power_;  // x^{-t}
};

/// phi(S) evaluated straight from the definition.
Fingerprint direct_fingerprint(const FingerprintContext& ctx, std::string_view s);

}  // namespace gramconv
