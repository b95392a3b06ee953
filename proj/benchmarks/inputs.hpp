#pragma once

#include <cstdint>
#include <string>

namespace gramconv::bench {

std::string random_text(std::size_t n, unsigned sigma, std::uint64_t seed);
/// Random ACGT base repeated `copies` times with point mutations.
std::string genome(std::size_t base, std::size_t copies, double rate, std::uint64_t seed);

}  // namespace gramconv::bench
