#include "inputs.hpp"

#include <random>

namespace gramconv::bench {

std::string random_text(std::size_t n, unsigned sigma, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::string s(n, 'a');
    for (auto& c : s) c = static_cast<char>('a' + rng() % sigma);
    return s;
}

std::string genome(std::size_t base, std::size_t copies, double rate, std::uint64_t seed) {
    static const char kAcgt[] = "ACGT";
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::string b(base, 'A');
    for (auto& c : b) c = kAcgt[rng() % 4];
    std::string out;
    out.reserve(base * copies);
    for (std::size_t k = 0; k < copies; ++k) {
        for (char c : b) out.push_back(coin(rng) < rate ? kAcgt[rng() % 4] : c);
    }
    return out;
}

}  // namespace gramconv::bench
