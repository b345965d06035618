#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ntcfec/channel.hpp"
#include "ntcfec/convolutional.hpp"

namespace ntcfec {

enum class Metric { SoftEuclidean, HardHamming };

const char* to_string(Metric metric);

struct DecodeConfig {
  Metric metric = Metric::SoftEuclidean;
  LockMode lock_mode = LockMode::Unlocked;
  int ntc_count = 0;  // appended decoder-side steps, 6 is the usual choice
  bool start_state_forced = true;  // pin the path start to S0
  // Unlocked pipelines append memory() zero flush bits on encode and drop
  // them again on decode; locked modes already end on a lock pair. Ignored
  // for locked modes.
  bool unlocked_flush = true;

  void validate() const;
};

// Cumulative metric and survivor choice for every (step, state) node.
// metrics has (steps + 1) rows: row 0 is the initial condition. survivors
// stores the predecessor state per node; the consumed input bit is the top
// bit of the node's own state index.
struct PathLattice {
  int state_count = 0;
  std::size_t steps = 0;
  std::vector<double> metrics;
  std::vector<std::uint16_t> survivors;

  double metric_at(std::size_t step, int state) const {
    return metrics[step * state_count + state];
  }
  int survivor_at(std::size_t step, int state) const {
    return survivors[step * state_count + state];
  }
};

struct DecodeResult {
  // Encoder inputs along the winning path with lock bits still present and
  // NTC-step inputs split off into ntc_bits.
  BitVec input_bits;
  BitVec ntc_bits;
  double final_metric = 0.0;
  int end_state = 0;
};

// SoftEuclidean: squared Euclidean distance between the received samples and
// the +-1 modulation of the expected bits. HardHamming: Hamming distance
// after hard-slicing the received samples.
double branch_metric(std::span<const double> received,
                     std::span<const Bit> expected, Metric metric);

// Appends n known symbol pairs for the decoder to chew on: (+1,+1) per step
// for Lower lock, (-1,-1) for Higher. Never transmitted or stored.
SoftSequence append_ntc(const SoftSequence& seq, LockMode lock_mode, int n);

// Add-compare-select over the lock-pruned trellis. Lock-bit steps only admit
// the known lock input; NTC steps at the tail run with free inputs. Ties in
// compare-select keep the lower predecessor state; traceback starts from the
// minimum-metric final state (lowest index on a tie).
DecodeResult viterbi_decode(const Trellis& trellis, const SoftSequence& seq,
                            const DecodeConfig& cfg);
DecodeResult viterbi_decode(const Trellis& trellis, const SoftSequence& seq,
                            const DecodeConfig& cfg, PathLattice& lattice);

struct OracleResult {
  DecodeResult result;
  // Number of candidates whose metric ties the optimum (1 = unique).
  int tie_count = 1;
};

// Exhaustive maximum-likelihood reference: enumerates every legal input
// sequence (free data bits, fixed lock bits, free NTC-step inputs over the
// pruned trellis), encodes each and sums branch metrics. Ties resolve to the
// lexicographically smallest input sequence. Limited to 20 free data steps.
DecodeResult ml_oracle_decode(const Trellis& trellis, const SoftSequence& seq,
                              const DecodeConfig& cfg);
OracleResult ml_oracle_decode_detail(const Trellis& trellis,
                                     const SoftSequence& seq,
                                     const DecodeConfig& cfg);

// lock_insert -> conv_encode -> bpsk_modulate (plus flush bits when
// configured for unlocked streams).
SoftSequence encode_pipeline(const CodeSpec& spec, const BitVec& data_bits,
                             const DecodeConfig& cfg);

// append_ntc -> viterbi_decode -> lock_strip; returns the estimated data
// bits. detail, when non-null, receives the raw decode result.
BitVec decode_pipeline(const SoftSequence& seq, const CodeSpec& spec,
                       const DecodeConfig& cfg,
                       DecodeResult* detail = nullptr);

}  // namespace ntcfec
