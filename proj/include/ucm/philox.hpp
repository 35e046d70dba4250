#pragma once

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). A draw is a
// pure function of (counter, key), so any trial/step can be regenerated
// without replaying a stream.

#include <array>
#include <cstdint>

namespace ucm {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32(PhiloxCounter ctr, PhiloxKey key);

// Uniform on the grid (k + 1/2) 2^-52, strictly inside (0, 1). A 53-bit grid
// would round its top point up to 1.
inline double to_open_unit(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t bits = ((static_cast<std::uint64_t>(hi) << 32) | lo) >> 12;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-52;
}

// Standard normal quantile, Wichura's AS241 (relative error ~1e-16).
double inverse_normal_cdf(double p);

struct NormalPair {
  double first;
  double second;
};

// Two independent standard normals for (step, trial) under `seed`, by
// inverse transform of the two 53-bit uniforms of one Philox block.
NormalPair normal_pair(std::uint64_t seed, std::uint64_t trial, std::uint64_t step);

}  // namespace ucm
