#pragma once

#include <cstddef>
#include <vector>

#include "ntcfec/bits.hpp"
#include "ntcfec/rng.hpp"

namespace ntcfec {

// PerInfoBit scales the noise by the code rate so the x-axis reads as Eb/N0;
// PerSymbol applies the same noise to every chain at a given dB (one shared
// channel block), which is the default for scheme comparisons.
enum class Normalization { PerInfoBit, PerSymbol };

const char* to_string(Normalization n);

struct NoiseSpec {
  double ebno_db = 0.0;
  Normalization normalization = Normalization::PerSymbol;
  double code_rate = 1.0;  // only read in PerInfoBit mode
};

// Voltage samples as read back from the medium, nominal +-1. symbol_width is
// the number of samples per trellis step: 2 for a rate-1/2 code, 1 for
// uncoded streams.
struct SoftSequence {
  std::vector<double> samples;
  int symbol_width = 1;

  std::size_t size() const { return samples.size(); }
  std::size_t steps() const {
    return symbol_width > 0 ? samples.size() / symbol_width : 0;
  }
};

// bit 1 -> +1.0 V, bit 0 -> -1.0 V.
SoftSequence bpsk_modulate(const BitVec& bits, int symbol_width = 1);

// Threshold at 0; a sample of exactly 0 slices to 1.
BitVec hard_slice(const SoftSequence& seq);

double noise_sigma(const NoiseSpec& spec);

// Adds sigma * g_i to every sample, g_i standard normal deviates drawn from
// rng in sample order. sigma = 0 returns the input untouched.
SoftSequence awgn(const SoftSequence& seq, double sigma, RngStream& rng);

}  // namespace ntcfec
