#pragma once

#include <cstdint>
#include <vector>

namespace ntcfec {

// Deterministic sample stream addressed by (master seed, label path).
// The state is derived by SplitMix64-style mixing of the seed with each
// label in turn, so equal addresses replay the identical stream on every
// platform and worker. Uniforms are (raw64 >> 11) * 2^-53 in [0,1);
// normals come from the basic Box-Muller transform, which consumes two
// uniforms per pair and emits the pair in order. The exact constants are
// documented in the README so other implementations can match bit-for-bit.
class RngStream {
 public:
  explicit RngStream(std::uint64_t master_seed,
                     const std::vector<std::int64_t>& labels = {});

  std::uint64_t next_u64();
  double next_uniform();
  double next_normal();

 private:
  std::uint64_t state_ = 0;
  double pending_ = 0.0;
  bool has_pending_ = false;
};

RngStream derive_stream(std::uint64_t master_seed,
                        const std::vector<std::int64_t>& labels);

}  // namespace ntcfec
