#include "ntcfec/viterbi.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ntcfec/errors.hpp"

namespace ntcfec {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxOracleSteps = 20;
constexpr int kMaxNtc = 64;

void check_samples(const SoftSequence& seq) {
  for (double s : seq.samples) {
    if (!std::isfinite(s)) {
      throw std::invalid_argument("viterbi: non-finite sample in sequence");
    }
  }
}

// Sample values the decoder expects for each transition, laid out
// [state][input][symbol bit].
std::vector<double> expected_volts(const Trellis& trellis) {
  const int width = trellis.spec.output_bits();
  std::vector<double> volts(trellis.state_count * 2 * width);
  for (int s = 0; s < trellis.state_count; ++s) {
    for (int x = 0; x < 2; ++x) {
      const std::uint8_t out = trellis.transitions[s][x].output;
      for (int j = 0; j < width; ++j) {
        volts[(s * 2 + x) * width + j] = (out >> j) & 1 ? 1.0 : -1.0;
      }
    }
  }
  return volts;
}

struct StepPlan {
  std::size_t total = 0;      // trellis steps in the sequence
  std::size_t message = 0;    // steps before the NTC extension
  int forced_input = -1;      // fixed lock input, or -1 when inputs are free
};

// A locked stream repeats (data, lock, lock); only step indices that are
// 0 mod 3 carry free inputs. NTC steps at the tail are always free.
int forced_input_at(LockMode mode, std::size_t step, std::size_t message_steps) {
  if (mode == LockMode::Unlocked || step >= message_steps || step % 3 == 0) {
    return -1;
  }
  return mode == LockMode::Higher ? 1 : 0;
}

DecodeResult decode_impl(const Trellis& trellis, const SoftSequence& seq,
                         const DecodeConfig& cfg, PathLattice* lattice) {
  cfg.validate();
  check_samples(seq);
  const int width = trellis.spec.output_bits();
  if (seq.samples.size() % static_cast<std::size_t>(width) != 0) {
    throw FormatError("viterbi: sample count not divisible by symbol width");
  }
  const std::size_t total = seq.samples.size() / width;
  const std::size_t ntc = static_cast<std::size_t>(cfg.ntc_count);
  if (ntc > total) {
    throw FormatError("viterbi: more NTC steps than trellis steps");
  }
  const std::size_t message = total - ntc;

  DecodeResult result;
  if (total == 0) {
    return result;
  }

  const int states = trellis.state_count;
  const int m = trellis.spec.memory();
  const std::vector<double> volts = expected_volts(trellis);
  const bool hard = cfg.metric == Metric::HardHamming;

  std::vector<double> cur(states, kInf);
  std::vector<double> next(states);
  std::vector<std::uint16_t> survivors(total * states, 0);
  if (cfg.start_state_forced) {
    cur[0] = 0.0;
  } else {
    std::fill(cur.begin(), cur.end(), 0.0);
  }
  if (trellis.excluded_at(0, 0)) {
    cur[trellis.excluded_state] = kInf;
  }
  if (lattice) {
    lattice->state_count = states;
    lattice->steps = total;
    lattice->metrics.assign((total + 1) * states, kInf);
    std::copy(cur.begin(), cur.end(), lattice->metrics.begin());
  }

  std::vector<Bit> hard_bits(width);
  for (std::size_t t = 0; t < total; ++t) {
    const double* recv = seq.samples.data() + t * width;
    std::uint8_t recv_packed = 0;
    if (hard) {
      for (int j = 0; j < width; ++j) {
        recv_packed |= static_cast<std::uint8_t>((recv[j] >= 0.0) << j);
      }
    }
    const int forced = forced_input_at(trellis.lock_mode, t, message);
    std::fill(next.begin(), next.end(), kInf);
    std::uint16_t* surv = survivors.data() + t * states;
    for (int s = 0; s < states; ++s) {
      if (cur[s] == kInf) {
        continue;
      }
      const int x_lo = forced < 0 ? 0 : forced;
      const int x_hi = forced < 0 ? 1 : forced;
      for (int x = x_lo; x <= x_hi; ++x) {
        const Transition& tr = trellis.transitions[s][x];
        if (trellis.excluded_at(tr.next, t + 1)) {
          continue;
        }
        double branch;
        if (hard) {
          branch = std::popcount(
              static_cast<unsigned>(recv_packed ^ tr.output));
        } else {
          branch = 0.0;
          const double* v = volts.data() + (s * 2 + x) * width;
          for (int j = 0; j < width; ++j) {
            const double d = recv[j] - v[j];
            branch += d * d;
          }
        }
        const double metric = cur[s] + branch;
        if (metric < next[tr.next]) {
          next[tr.next] = metric;
          surv[tr.next] = static_cast<std::uint16_t>(s);
        }
      }
    }
    cur.swap(next);
    if (lattice) {
      std::copy(cur.begin(), cur.end(),
                lattice->metrics.begin() + (t + 1) * states);
    }
  }

  int best_state = 0;
  double best_metric = cur[0];
  for (int s = 1; s < states; ++s) {
    if (cur[s] < best_metric) {
      best_metric = cur[s];
      best_state = s;
    }
  }
  if (best_metric == kInf) {
    throw FormatError("viterbi: no surviving path");
  }

  BitVec inputs(total);
  int state = best_state;
  for (std::size_t t = total; t-- > 0;) {
    inputs[t] = static_cast<Bit>(state >> (m - 1));
    state = survivors[t * states + state];
  }
  if (lattice) {
    lattice->survivors = std::move(survivors);
  }

  result.input_bits.assign(inputs.begin(), inputs.begin() + message);
  result.ntc_bits.assign(inputs.begin() + message, inputs.end());
  result.final_metric = best_metric;
  result.end_state = best_state;
  return result;
}

}  // namespace

const char* to_string(Metric metric) {
  return metric == Metric::HardHamming ? "hard" : "soft";
}

void DecodeConfig::validate() const {
  if (ntc_count < 0 || ntc_count > kMaxNtc) {
    throw std::invalid_argument("DecodeConfig: ntc_count outside [0, 64]");
  }
  if (ntc_count > 0 && lock_mode == LockMode::Unlocked) {
    throw std::invalid_argument(
        "DecodeConfig: NTCs are defined only for locked codes");
  }
}

double branch_metric(std::span<const double> received,
                     std::span<const Bit> expected, Metric metric) {
  if (received.size() != expected.size()) {
    throw std::invalid_argument("branch_metric: size mismatch");
  }
  double value = 0.0;
  for (std::size_t i = 0; i < received.size(); ++i) {
    if (std::isnan(received[i])) {
      throw std::invalid_argument("branch_metric: NaN sample");
    }
    if (metric == Metric::HardHamming) {
      const Bit sliced = received[i] >= 0.0 ? 1 : 0;
      value += sliced != (expected[i] & 1) ? 1.0 : 0.0;
    } else {
      const double d = received[i] - (expected[i] ? 1.0 : -1.0);
      value += d * d;
    }
  }
  return value;
}

SoftSequence append_ntc(const SoftSequence& seq, LockMode lock_mode, int n) {
  if (n < 0) {
    throw std::invalid_argument("append_ntc: negative count");
  }
  if (n == 0) {
    return seq;
  }
  if (lock_mode == LockMode::Unlocked) {
    throw std::invalid_argument(
        "append_ntc: NTCs are defined only for locked codes");
  }
  const double volt = lock_mode == LockMode::Lower ? 1.0 : -1.0;
  SoftSequence out = seq;
  out.samples.insert(out.samples.end(), static_cast<std::size_t>(2 * n), volt);
  return out;
}

DecodeResult viterbi_decode(const Trellis& trellis, const SoftSequence& seq,
                            const DecodeConfig& cfg) {
  return decode_impl(trellis, seq, cfg, nullptr);
}

DecodeResult viterbi_decode(const Trellis& trellis, const SoftSequence& seq,
                            const DecodeConfig& cfg, PathLattice& lattice) {
  return decode_impl(trellis, seq, cfg, &lattice);
}

namespace {

struct OracleWalk {
  double metric = 0.0;
  int end_state = 0;
  bool alive = true;
};

// Encode the given inputs through the trellis starting at `state`, summing
// branch metrics against the samples from step `first`. Paths through an
// excluded state die.
OracleWalk oracle_walk(const Trellis& trellis, const SoftSequence& seq,
                       const DecodeConfig& cfg, const BitVec& inputs,
                       int state, std::size_t first) {
  const int width = trellis.spec.output_bits();
  std::array<Bit, 8> expected{};
  OracleWalk walk;
  walk.end_state = state;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const std::size_t t = first + i;
    const Transition& tr = trellis.transitions[walk.end_state][inputs[i]];
    if (trellis.excluded_at(tr.next, t + 1)) {
      walk.alive = false;
      return walk;
    }
    for (int j = 0; j < width; ++j) {
      expected[j] = (tr.output >> j) & 1;
    }
    walk.metric += branch_metric(
        std::span<const double>(seq.samples.data() + t * width, width),
        std::span<const Bit>(expected.data(), static_cast<std::size_t>(width)),
        cfg.metric);
    walk.end_state = tr.next;
  }
  return walk;
}

BitVec candidate_bits(std::uint64_t index, int count) {
  BitVec bits(count);
  for (int i = 0; i < count; ++i) {
    bits[i] = static_cast<Bit>((index >> (count - 1 - i)) & 1);
  }
  return bits;
}

}  // namespace

OracleResult ml_oracle_decode_detail(const Trellis& trellis,
                                     const SoftSequence& seq,
                                     const DecodeConfig& cfg) {
  cfg.validate();
  check_samples(seq);
  const int width = trellis.spec.output_bits();
  if (seq.samples.size() % static_cast<std::size_t>(width) != 0) {
    throw FormatError("ml_oracle: sample count not divisible by symbol width");
  }
  const std::size_t total = seq.samples.size() / width;
  const std::size_t ntc = static_cast<std::size_t>(cfg.ntc_count);
  if (ntc > total) {
    throw FormatError("ml_oracle: more NTC steps than trellis steps");
  }
  const std::size_t message = total - ntc;
  const bool locked = trellis.lock_mode != LockMode::Unlocked;
  if (locked && message % 3 != 0) {
    throw FormatError("ml_oracle: locked stream length not divisible by 3");
  }
  const std::size_t data_steps = locked ? message / 3 : message;
  if (data_steps > kMaxOracleSteps) {
    throw std::invalid_argument(
        "ml_oracle: too many free input steps for exhaustive search");
  }

  OracleResult out;
  if (total == 0) {
    return out;
  }

  const double rel_tol = 1e-9;
  double best = kInf;
  int ties = 0;
  BitVec best_inputs;
  BitVec best_ntc;
  int best_end = 0;
  const int start_lo = 0;
  const int start_hi = cfg.start_state_forced ? 0 : trellis.state_count - 1;

  for (std::uint64_t c = 0; c < (1ull << data_steps); ++c) {
    const BitVec inputs =
        lock_insert(candidate_bits(c, static_cast<int>(data_steps)),
                    trellis.lock_mode);
    for (int start = start_lo; start <= start_hi; ++start) {
      if (trellis.excluded_at(start, 0)) {
        continue;
      }
      const OracleWalk body =
          oracle_walk(trellis, seq, cfg, inputs, start, 0);
      if (!body.alive) {
        continue;
      }
      for (std::uint64_t nc = 0; nc < (1ull << ntc); ++nc) {
        const BitVec tail = candidate_bits(nc, static_cast<int>(ntc));
        const OracleWalk ext =
            oracle_walk(trellis, seq, cfg, tail, body.end_state, message);
        if (!ext.alive) {
          continue;
        }
        const double metric = body.metric + ext.metric;
        const double tol =
            best == kInf ? 0.0 : rel_tol * std::max(1.0, std::abs(best));
        if (metric < best - tol) {
          best = metric;
          ties = 1;
          best_inputs = inputs;
          best_ntc = tail;
          best_end = ext.end_state;
        } else if (std::abs(metric - best) <= tol) {
          ++ties;
        }
      }
    }
  }
  if (best == kInf) {
    throw FormatError("ml_oracle: no legal input sequence");
  }
  out.result.input_bits = std::move(best_inputs);
  out.result.ntc_bits = std::move(best_ntc);
  out.result.final_metric = best;
  out.result.end_state = best_end;
  out.tie_count = ties;
  return out;
}

DecodeResult ml_oracle_decode(const Trellis& trellis, const SoftSequence& seq,
                              const DecodeConfig& cfg) {
  return ml_oracle_decode_detail(trellis, seq, cfg).result;
}

SoftSequence encode_pipeline(const CodeSpec& spec, const BitVec& data_bits,
                             const DecodeConfig& cfg) {
  cfg.validate();
  BitVec inputs;
  if (cfg.lock_mode == LockMode::Unlocked) {
    inputs = data_bits;
    if (cfg.unlocked_flush && !data_bits.empty()) {
      inputs.insert(inputs.end(), spec.memory(), 0);
    }
  } else {
    inputs = lock_insert(data_bits, cfg.lock_mode);
  }
  return bpsk_modulate(conv_encode(spec, inputs), spec.output_bits());
}

BitVec decode_pipeline(const SoftSequence& seq, const CodeSpec& spec,
                       const DecodeConfig& cfg, DecodeResult* detail) {
  cfg.validate();
  const Trellis trellis = build_trellis(spec, cfg.lock_mode);
  const SoftSequence extended = append_ntc(seq, cfg.lock_mode, cfg.ntc_count);
  DecodeResult result = viterbi_decode(trellis, extended, cfg);
  BitVec data = lock_strip(result.input_bits, cfg.lock_mode);
  if (cfg.lock_mode == LockMode::Unlocked && cfg.unlocked_flush) {
    const std::size_t m = static_cast<std::size_t>(spec.memory());
    if (data.size() >= m && !data.empty()) {
      data.resize(data.size() - m);
    }
  }
  if (detail) {
    *detail = std::move(result);
  }
  return data;
}

}  // namespace ntcfec
