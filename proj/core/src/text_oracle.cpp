#include "gramconv/text_oracle.hpp"

#include <algorithm>

#include "gramconv/errors.hpp"

namespace gramconv {

namespace {

bool forward_equal(const TextOracle& text, Position a, Position b, std::uint64_t len) {
    return text.fingerprint(a, a + len - 1) == text.fingerprint(b, b + len - 1);
}

bool backward_equal(const TextOracle& text, Position a_end, Position b_end, std::uint64_t len) {
    return text.fingerprint(a_end - len + 1, a_end) == text.fingerprint(b_end - len + 1, b_end);
}

// Short extensions dominate in practice; compare a few bytes before galloping.
constexpr std::uint64_t kDirectProbe = 4;

}  // namespace

void check_range(const TextOracle& text, Position i, Position j) {
    if (i == 0 || j > text.length() || i > j + 1) {
        throw InvalidArgument("range [" + std::to_string(i) + ", " + std::to_string(j) + "] outside text of length " +
                              std::to_string(text.length()));
    }
}

std::uint64_t lce(const TextOracle& text, Position a, Position b, std::uint64_t max_len) {
    const std::uint64_t n = text.length();
    if (a == 0 || b == 0 || a > n + 1 || b > n + 1) throw InvalidArgument("lce position out of range");
    max_len = std::min({max_len, n + 1 - a, n + 1 - b});
    if (a == b) return max_len;
    std::uint64_t l = 0;
    while (l < max_len && l < kDirectProbe) {
        if (text.access(a + l) != text.access(b + l)) return l;
        ++l;
    }
    std::uint64_t step = 1;
    while (l + step <= max_len && forward_equal(text, a + l, b + l, step)) {
        l += step;
        step *= 2;
    }
    while (step > 1) {
        step /= 2;
        if (l + step <= max_len && forward_equal(text, a + l, b + l, step)) l += step;
    }
    return l;
}

std::uint64_t lcs(const TextOracle& text, Position a_end, Position b_end, std::uint64_t max_len) {
    const std::uint64_t n = text.length();
    if (a_end > n || b_end > n) throw InvalidArgument("lcs position out of range");
    max_len = std::min({max_len, a_end, b_end});
    if (a_end == b_end) return max_len;
    std::uint64_t l = 0;
    while (l < max_len && l < kDirectProbe) {
        if (text.access(a_end - l) != text.access(b_end - l)) return l;
        ++l;
    }
    std::uint64_t step = 1;
    while (l + step <= max_len && backward_equal(text, a_end - l, b_end - l, step)) {
        l += step;
        step *= 2;
    }
    while (step > 1) {
        step /= 2;
        if (l + step <= max_len && backward_equal(text, a_end - l, b_end - l, step)) l += step;
    }
    return l;
}

std::strong_ordering compare_lex(const TextOracle& text, Position i, Position j, Position i2, Position j2) {
    check_range(text, i, j);
    check_range(text, i2, j2);
    const std::uint64_t len1 = j + 1 - i;
    const std::uint64_t len2 = j2 + 1 - i2;
    const std::uint64_t m = std::min(len1, len2);
    const std::uint64_t l = m == 0 ? 0 : lce(text, i, i2, m);
    if (l == m) return len1 <=> len2;
    return text.access(i + l) <=> text.access(i2 + l);
}

std::strong_ordering compare_colex(const TextOracle& text, Position i, Position j, Position i2, Position j2) {
    check_range(text, i, j);
    check_range(text, i2, j2);
    const std::uint64_t len1 = j + 1 - i;
    const std::uint64_t len2 = j2 + 1 - i2;
    const std::uint64_t m = std::min(len1, len2);
    const std::uint64_t l = m == 0 ? 0 : lcs(text, j, j2, m);
    if (l == m) return len1 <=> len2;
    return text.access(j - l) <=> text.access(j2 - l);
}

PlainText::PlainText(std::string text, FingerprintContext ctx) : text_(std::move(text)), ctx_(ctx) {
    prefix_.resize(text_.size() + 1, 0);
    inv_power_.resize(text_.size() + 1, 1);
    const std::uint64_t inv_x = ctx_.inverse(ctx_.base());
    std::uint64_t pw = 1;
    for (std::size_t t = 0; t < text_.size(); ++t) {
        pw = ctx_.mul(pw, ctx_.base());
        prefix_[t + 1] = ctx_.add(prefix_[t], ctx_.mul(FingerprintContext::code(static_cast<std::uint8_t>(text_[t])), pw));
        inv_power_[t + 1] = ctx_.mul(inv_power_[t], inv_x);
    }
}

std::uint8_t PlainText::access(Position i) const {
    if (i == 0 || i > text_.size()) throw InvalidArgument("access position " + std::to_string(i) + " out of range");
    return static_cast<std::uint8_t>(text_[i - 1]);
}

Fingerprint PlainText::fingerprint(Position i, Position j) const {
    check_range(*this, i, j);
    return ctx_.mul(ctx_.sub(prefix_[j], prefix_[i - 1]), inv_power_[i - 1]);
}

Fingerprint direct_fingerprint(const FingerprintContext& ctx, std::string_view s) {
    Fingerprint fp = 0;
    std::uint64_t pw = 1;
    for (char c : s) {
        pw = ctx.mul(pw, ctx.base());
        fp = ctx.add(fp, ctx.mul(FingerprintContext::code(static_cast<std::uint8_t>(c)), pw));
    }
    return fp;
}

}  // namespace gramconv
