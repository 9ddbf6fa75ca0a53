// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace fracbin {

struct RngSeed {
  std::uint64_t value = 0;
};

/// One independent random stream, identified by (master seed, stream index).
/// Streams are Mersenne twisters seeded through a SplitMix64 mix of the pair,
/// so stream i is the same no matter which thread draws from it.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(RngSeed seed, std::uint64_t stream);

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform();
  /// Standard exponential.
  double exponential();

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace fracbin
