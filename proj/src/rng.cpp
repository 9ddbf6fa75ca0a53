// SPDX-License-Identifier: Apache-2.0
#include "fracbin/rng.hpp"

#include <cmath>

namespace fracbin {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

RngStream::RngStream(RngSeed seed, std::uint64_t stream)
    : engine_(splitmix64(seed.value ^ splitmix64(stream))) {}

double RngStream::uniform() {
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::exponential() { return -std::log(uniform()); }

}  // namespace fracbin
