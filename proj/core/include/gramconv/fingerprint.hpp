#pragma once

#include <cstdint>

namespace gramconv {

__extension__ typedef unsigned __int128 uint128;

using Fingerprint = std::uint64_t;

/// Karp-Rabin fingerprints phi(S) = sum_{t=1}^{|S|} code(S[t]) * x^t mod p.
///
/// With this convention phi(S . S') = phi(S) + x^{|S|} * phi(S'), and
/// phi(empty) = 0. Byte b is encoded as b + 1 so that no symbol hashes to 0.
///
/// The context is immutable; powers are computed by fast exponentiation so
/// concurrent readers never observe a growing table.
class FingerprintContext {
public:
    static constexpr std::uint64_t kMersenne61 = (std::uint64_t{1} << 61) - 1;

    /// Default modulus 2^61 - 1 with base drawn from `seed`.
    static FingerprintContext from_seed(std::uint64_t seed);

    /// Explicit modulus and base; `modulus` must be a prime below 2^63 and
    /// 1 <= base < modulus.
    FingerprintContext(std::uint64_t modulus, std::uint64_t base);

    std::uint64_t modulus() const noexcept { return p_; }
    std::uint64_t base() const noexcept { return x_; }

    static std::uint64_t code(std::uint8_t byte) noexcept { return std::uint64_t{byte} + 1; }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const noexcept {
        std::uint64_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const noexcept {
        return a >= b ? a - b : a + p_ - b;
    }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const noexcept {
        uint128 prod = static_cast<uint128>(a) * b;
        if (p_ == kMersenne61) {
            std::uint64_t lo = static_cast<std::uint64_t>(prod & kMersenne61);
            std::uint64_t hi = static_cast<std::uint64_t>(prod >> 61);
            std::uint64_t s = lo + hi;
            return s >= p_ ? s - p_ : s;
        }
        return static_cast<std::uint64_t>(prod % p_);
    }

    /// x^e mod p.
    std::uint64_t power(std::uint64_t e) const noexcept;

    /// Modular inverse (p is prime).
    std::uint64_t inverse(std::uint64_t a) const noexcept;

    /// phi of a single byte.
    Fingerprint of_byte(std::uint8_t byte) const noexcept { return mul(code(byte), x_); }

    /// phi(S . S') from phi(S), x^{|S|} and phi(S').
    Fingerprint concat(Fingerprint left, std::uint64_t left_power, Fingerprint right) const noexcept {
        return add(left, mul(left_power, right));
    }

    /// phi(S . S') from phi(S), |S| and phi(S').
    Fingerprint compose(Fingerprint left, std::uint64_t left_length, Fingerprint right) const noexcept {
        return concat(left, power(left_length), right);
    }

    /// phi(S^q) given phi(S) and x^{|S|}, by doubling.
    Fingerprint repeat(Fingerprint fp, std::uint64_t pw, std::uint64_t times) const noexcept;

private:
    std::uint64_t p_;
    std::uint64_t x_;
};

/// A fingerprint together with x^{length}; the unit of composition in descents.
struct FingerprintPiece {
    Fingerprint fp = 0;
    std::uint64_t pw = 1;
};

}  // namespace gramconv
