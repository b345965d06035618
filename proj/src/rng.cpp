#include "ntcfec/rng.hpp"

#include <cmath>
#include <numbers>

namespace ntcfec {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
constexpr std::uint64_t kMixA = 0xBF58476D1CE4E5B9ull;
constexpr std::uint64_t kMixB = 0x94D049BB133111EBull;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= kMixA;
  z ^= z >> 27;
  z *= kMixB;
  return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed,
                     const std::vector<std::int64_t>& labels) {
  state_ = mix64(master_seed);
  for (std::int64_t label : labels) {
    state_ = mix64(state_ + kGolden + static_cast<std::uint64_t>(label) * kMixA);
  }
}

std::uint64_t RngStream::next_u64() {
  state_ += kGolden;
  return mix64(state_);
}

double RngStream::next_uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::next_normal() {
  if (has_pending_) {
    has_pending_ = false;
    return pending_;
  }
  const double u1 = next_uniform();
  const double u2 = next_uniform();
  // 1-u1 lies in (0,1], keeping the log argument away from zero.
  const double radius = std::sqrt(-2.0 * std::log(1.0 - u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  pending_ = radius * std::sin(angle);
  has_pending_ = true;
  return radius * std::cos(angle);
}

RngStream derive_stream(std::uint64_t master_seed,
                        const std::vector<std::int64_t>& labels) {
  return RngStream(master_seed, labels);
}

}  // namespace ntcfec
