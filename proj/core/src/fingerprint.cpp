#include "gramconv/fingerprint.hpp"

#include <random>

#include "gramconv/errors.hpp"

namespace gramconv {

FingerprintContext FingerprintContext::from_seed(std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uint64_t x = 0;
    // Uniform in [1, p-1] by rejection on 61-bit draws.
    do {
        x = rng() >> 3;
    } while (x == 0 || x >= kMersenne61);
    return FingerprintContext(kMersenne61, x);
}

FingerprintContext::FingerprintContext(std::uint64_t modulus, std::uint64_t base) : p_(modulus), x_(base) {
    if (modulus < 3 || modulus >= (std::uint64_t{1} << 63)) throw InvalidArgument("fingerprint modulus out of range");
    if (base == 0 || base >= modulus) throw InvalidArgument("fingerprint base must lie in [1, p-1]");
}

std::uint64_t FingerprintContext::power(std::uint64_t e) const noexcept {
    std::uint64_t result = 1 % p_;
    std::uint64_t b = x_;
    while (e > 0) {
        if (e & 1) result = mul(result, b);
        b = mul(b, b);
        e >>= 1;
    }
    return result;
}

std::uint64_t FingerprintContext::inverse(std::uint64_t a) const noexcept {
    std::uint64_t result = 1;
    std::uint64_t b = a % p_;
    std::uint64_t e = p_ - 2;
    while (e > 0) {
        if (e & 1) result = mul(result, b);
        b = mul(b, b);
        e >>= 1;
    }
    return result;
}

Fingerprint FingerprintContext::repeat(Fingerprint fp, std::uint64_t pw, std::uint64_t times) const noexcept {
    // acc covers S^done; block covers S^(2^bit).
    Fingerprint acc = 0;
    std::uint64_t acc_pw = 1;
    Fingerprint block = fp;
    std::uint64_t block_pw = pw;
    while (times > 0) {
        if (times & 1) {
            acc = concat(acc, acc_pw, block);
            acc_pw = mul(acc_pw, block_pw);
        }
        block = concat(block, block_pw, block);
        block_pw = mul(block_pw, block_pw);
        times >>= 1;
    }
    return acc;
}

}  // namespace gramconv
