#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ntcfec/channel.hpp"
#include "ntcfec/convolutional.hpp"
#include "ntcfec/reed_solomon.hpp"
#include "ntcfec/viterbi.hpp"

namespace ntcfec {

// Coding chains under comparison. The conv-family schemes (SvadNtc,
// SoftViterbi, HardViterbi) transmit identical symbol streams and therefore
// share one noise realization per frame; only the decoder differs.
enum class Scheme {
  SvadNtc,        // locked encoder, soft Viterbi with NTC extension
  ReedSolomon,    // RS over hard-sliced symbols
  UncodedHard,    // raw BPSK + slicer, channel baseline
  SoftViterbi,    // same encoder as SvadNtc, soft decode, no NTCs
  HardViterbi,    // same encoder, hard-decision decode, no NTCs
};

const char* to_string(Scheme scheme);
Scheme parse_scheme(const std::string& token);

struct ExperimentConfig {
  std::uint64_t info_bits = 1'000'000;
  std::vector<double> ebno_points{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
  std::vector<Scheme> schemes{Scheme::SvadNtc, Scheme::ReedSolomon};
  std::uint64_t master_seed = 1;
  CodeSpec code_spec{};
  LockMode lock_mode = LockMode::Lower;
  int ntc_count = 6;
  RsParams rs_params{};
  Normalization normalization = Normalization::PerSymbol;
  std::uint64_t frame_len_bits = 0;  // 0 = whole message in one frame
  int threads = 0;                   // 0 = hardware concurrency
  bool noiseless = false;            // test hook: force sigma to 0

  void validate() const;
  std::uint64_t frame_len() const {
    return frame_len_bits == 0 ? info_bits
                               : std::min(frame_len_bits, info_bits);
  }
};

struct PointResult {
  double ebno_db = 0.0;
  Scheme scheme = Scheme::SvadNtc;
  std::uint64_t info_bits = 0;
  std::uint64_t residual_errors = 0;
  double ber = 0.0;
  double elapsed_seconds = 0.0;
  int ntc_count = 0;
  std::uint64_t seed = 0;
  std::string params;
};

struct SweepTable {
  std::vector<PointResult> rows;
  std::map<Scheme, std::uint64_t> total_residual;
  std::map<Scheme, std::uint64_t> total_bits;

  void recompute_totals();
};

// Hamming distance between equal-length bit streams.
std::uint64_t count_residual(const BitVec& original, const BitVec& decoded);

// One (Eb/N0, scheme) Monte Carlo point. Data bits come from stream
// (seed, [point, frame, 0]); noise from (seed, [point, frame, role]) with a
// role per transmitted stream family, so every scheme sees the same data and
// comparable chains see identical channels. point = round(ebno_db * 1000).
PointResult run_point(const ExperimentConfig& cfg, double ebno_db,
                      Scheme scheme);

// Every (ebno, scheme) pair, frames distributed over a worker pool; row
// order is (ebno, scheme) regardless of scheduling.
SweepTable run_sweep(const ExperimentConfig& cfg);

// SvadNtc at each NTC count in ntc_values for every configured ebno point,
// identical data and noise across counts.
SweepTable ntc_study(const ExperimentConfig& cfg,
                     const std::vector<int>& ntc_values);

// Deterministic CSV: header ebno_db,scheme,info_bits,residual_errors,ber,
// seed,params; BER printed with 6 significant digits.
std::string emit_csv(const SweepTable& table);

// Two-column (ebno, residual) plot data for one scheme.
std::string emit_dat(const SweepTable& table, Scheme scheme);

}  // namespace ntcfec
