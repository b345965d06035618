#include "ntcfec/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace ntcfec {

const char* to_string(Normalization n) {
  return n == Normalization::PerInfoBit ? "info" : "symbol";
}

SoftSequence bpsk_modulate(const BitVec& bits, int symbol_width) {
  if (symbol_width < 1) {
    throw std::invalid_argument("bpsk_modulate: symbol_width must be >= 1");
  }
  if (bits.size() % static_cast<std::size_t>(symbol_width) != 0) {
    throw std::invalid_argument(
        "bpsk_modulate: bit count not a multiple of symbol_width");
  }
  SoftSequence seq;
  seq.symbol_width = symbol_width;
  seq.samples.reserve(bits.size());
  for (Bit b : bits) {
    seq.samples.push_back(b ? 1.0 : -1.0);
  }
  return seq;
}

BitVec hard_slice(const SoftSequence& seq) {
  BitVec bits;
  bits.reserve(seq.samples.size());
  for (double s : seq.samples) {
    if (std::isnan(s)) {
      throw std::invalid_argument("hard_slice: NaN sample");
    }
    bits.push_back(s >= 0.0 ? 1 : 0);
  }
  return bits;
}

double noise_sigma(const NoiseSpec& spec) {
  if (!std::isfinite(spec.ebno_db)) {
    throw std::invalid_argument("noise_sigma: ebno_db must be finite");
  }
  const double snr = std::pow(10.0, spec.ebno_db / 10.0);
  if (spec.normalization == Normalization::PerInfoBit) {
    if (!(spec.code_rate > 0.0)) {
      throw std::invalid_argument("noise_sigma: code_rate must be > 0");
    }
    return std::sqrt(1.0 / (2.0 * spec.code_rate * snr));
  }
  return std::sqrt(1.0 / (2.0 * snr));
}

SoftSequence awgn(const SoftSequence& seq, double sigma, RngStream& rng) {
  if (!(sigma >= 0.0)) {
    throw std::invalid_argument("awgn: sigma must be >= 0");
  }
  if (sigma == 0.0) {
    return seq;
  }
  SoftSequence out = seq;
  for (double& s : out.samples) {
    s += sigma * rng.next_normal();
  }
  return out;
}

}  // namespace ntcfec
