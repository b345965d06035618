#include "ntcfec/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <thread>

namespace ntcfec {
namespace {

// Stream roles under one (point, frame) label pair.
constexpr std::int64_t kRoleData = 0;
constexpr std::int64_t kRoleConvNoise = 1;
constexpr std::int64_t kRoleRsNoise = 2;
constexpr std::int64_t kRoleUncodedNoise = 3;

std::int64_t point_label(double ebno_db) {
  return std::llround(ebno_db * 1000.0);
}

bool conv_family(Scheme scheme) {
  return scheme == Scheme::SvadNtc || scheme == Scheme::SoftViterbi ||
         scheme == Scheme::HardViterbi;
}

std::int64_t noise_role(Scheme scheme) {
  if (conv_family(scheme)) {
    return kRoleConvNoise;
  }
  return scheme == Scheme::ReedSolomon ? kRoleRsNoise : kRoleUncodedNoise;
}

// Rate used by PerInfoBit normalization: information bits per channel sample
// of the full chain, lock overhead included.
double chain_rate(const ExperimentConfig& cfg, Scheme scheme) {
  switch (scheme) {
    case Scheme::UncodedHard:
      return 1.0;
    case Scheme::ReedSolomon:
      return static_cast<double>(cfg.rs_params.k) / cfg.rs_params.n;
    default: {
      const double conv = cfg.code_spec.rate();
      return cfg.lock_mode == LockMode::Unlocked ? conv : conv / 3.0;
    }
  }
}

BitVec random_bits(RngStream& rng, std::uint64_t count) {
  BitVec bits(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    bits[i] = static_cast<Bit>(rng.next_u64() & 1);
  }
  return bits;
}

BitVec run_conv_frame(const ExperimentConfig& cfg, Scheme scheme,
                      const BitVec& data, double sigma, RngStream& noise) {
  DecodeConfig dc;
  dc.lock_mode = cfg.lock_mode;
  dc.metric = scheme == Scheme::HardViterbi ? Metric::HardHamming
                                            : Metric::SoftEuclidean;
  dc.ntc_count = scheme == Scheme::SvadNtc ? cfg.ntc_count : 0;
  const SoftSequence sent = encode_pipeline(cfg.code_spec, data, dc);
  const SoftSequence received = awgn(sent, sigma, noise);
  return decode_pipeline(received, cfg.code_spec, dc);
}

BitVec run_rs_frame(const ExperimentConfig& cfg, const BitVec& data,
                    double sigma, RngStream& noise) {
  const RsParams& rs = cfg.rs_params;
  std::vector<std::uint8_t> symbols = pack_bits(data);
  const std::size_t blocks = (symbols.size() + rs.k - 1) / rs.k;
  symbols.resize(blocks * rs.k, 0);

  BitVec coded_bits;
  coded_bits.reserve(blocks * rs.n * 8);
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::vector<std::uint8_t> msg(symbols.begin() + b * rs.k,
                                        symbols.begin() + (b + 1) * rs.k);
    const BitVec block_bits = unpack_bits(rs_encode(rs, msg));
    coded_bits.insert(coded_bits.end(), block_bits.begin(), block_bits.end());
  }

  const SoftSequence received = awgn(bpsk_modulate(coded_bits), sigma, noise);
  const std::vector<std::uint8_t> sliced = pack_bits(hard_slice(received));

  BitVec decoded;
  decoded.reserve(blocks * rs.k * 8);
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::vector<std::uint8_t> word(sliced.begin() + b * rs.n,
                                         sliced.begin() + (b + 1) * rs.n);
    const BitVec msg_bits = unpack_bits(rs_decode(rs, word).first);
    decoded.insert(decoded.end(), msg_bits.begin(), msg_bits.end());
  }
  decoded.resize(data.size());  // padding bits are not counted
  return decoded;
}

BitVec run_uncoded_frame(const BitVec& data, double sigma, RngStream& noise) {
  const SoftSequence received = awgn(bpsk_modulate(data), sigma, noise);
  return hard_slice(received);
}

std::string octal_generators(const CodeSpec& spec) {
  std::string out;
  char digits[16];
  for (std::size_t i = 0; i < spec.generators.size(); ++i) {
    std::snprintf(digits, sizeof(digits), "%o",
                  static_cast<unsigned>(spec.generators[i]));
    if (i > 0) {
      out += ':';
    }
    out += digits;
  }
  return out;
}

std::string param_string(const ExperimentConfig& cfg, Scheme scheme,
                         int ntc_count) {
  char buffer[200];
  switch (scheme) {
    case Scheme::ReedSolomon:
      std::snprintf(buffer, sizeof(buffer), "rs=%d:%d;norm=%s;frame=%llu",
                    cfg.rs_params.n, cfg.rs_params.k,
                    to_string(cfg.normalization),
                    static_cast<unsigned long long>(cfg.frame_len()));
      break;
    case Scheme::UncodedHard:
      std::snprintf(buffer, sizeof(buffer), "norm=%s;frame=%llu",
                    to_string(cfg.normalization),
                    static_cast<unsigned long long>(cfg.frame_len()));
      break;
    default:
      std::snprintf(buffer, sizeof(buffer),
                    "gen=%s;lock=%s;ntc=%d;norm=%s;frame=%llu",
                    octal_generators(cfg.code_spec).c_str(),
                    to_string(cfg.lock_mode), ntc_count,
                    to_string(cfg.normalization),
                    static_cast<unsigned long long>(cfg.frame_len()));
      break;
  }
  return buffer;
}

PointResult run_point_with_ntc(const ExperimentConfig& cfg, double ebno_db,
                               Scheme scheme, int ntc_count) {
  const auto started = std::chrono::steady_clock::now();
  ExperimentConfig local = cfg;
  local.ntc_count = ntc_count;

  double sigma = 0.0;
  if (!cfg.noiseless) {
    NoiseSpec noise_spec;
    noise_spec.ebno_db = ebno_db;
    noise_spec.normalization = cfg.normalization;
    noise_spec.code_rate = chain_rate(cfg, scheme);
    sigma = noise_sigma(noise_spec);
  }

  const std::int64_t point = point_label(ebno_db);
  const std::uint64_t frame_len = cfg.frame_len();
  std::uint64_t residual = 0;
  std::uint64_t done = 0;
  std::int64_t frame = 0;
  while (done < cfg.info_bits) {
    const std::uint64_t bits = std::min(frame_len, cfg.info_bits - done);
    RngStream data_rng = derive_stream(cfg.master_seed, {point, frame, kRoleData});
    RngStream noise_rng =
        derive_stream(cfg.master_seed, {point, frame, noise_role(scheme)});
    const BitVec data = random_bits(data_rng, bits);
    BitVec decoded;
    switch (scheme) {
      case Scheme::ReedSolomon:
        decoded = run_rs_frame(local, data, sigma, noise_rng);
        break;
      case Scheme::UncodedHard:
        decoded = run_uncoded_frame(data, sigma, noise_rng);
        break;
      default:
        decoded = run_conv_frame(local, scheme, data, sigma, noise_rng);
        break;
    }
    residual += count_residual(data, decoded);
    done += bits;
    ++frame;
  }

  PointResult result;
  result.ebno_db = ebno_db;
  result.scheme = scheme;
  result.info_bits = cfg.info_bits;
  result.residual_errors = residual;
  result.ber = cfg.info_bits ? static_cast<double>(residual) / cfg.info_bits : 0.0;
  result.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  result.ntc_count = scheme == Scheme::SvadNtc ? ntc_count : 0;
  result.seed = cfg.master_seed;
  result.params = param_string(cfg, scheme, result.ntc_count);
  return result;
}

void run_tasks(int threads, std::size_t count,
               const std::function<void(std::size_t)>& task) {
  int workers = threads > 0
                    ? threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min<int>(workers, static_cast<int>(count)));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) {
      task(i);
    }
    return;
  }
  std::atomic<std::size_t> cursor{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (true) {
        const std::size_t i = cursor.fetch_add(1);
        if (i >= count) {
          return;
        }
        task(i);
      }
    });
  }
  for (std::thread& t : pool) {
    t.join();
  }
}

}  // namespace

const char* to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::SvadNtc:
      return "svad";
    case Scheme::ReedSolomon:
      return "rs";
    case Scheme::UncodedHard:
      return "uncoded";
    case Scheme::SoftViterbi:
      return "soft";
    case Scheme::HardViterbi:
      return "hard";
  }
  return "?";
}

Scheme parse_scheme(const std::string& token) {
  if (token == "svad") return Scheme::SvadNtc;
  if (token == "rs") return Scheme::ReedSolomon;
  if (token == "uncoded") return Scheme::UncodedHard;
  if (token == "soft") return Scheme::SoftViterbi;
  if (token == "hard") return Scheme::HardViterbi;
  throw std::invalid_argument("unknown scheme: " + token);
}

void ExperimentConfig::validate() const {
  if (info_bits < 1) {
    throw std::invalid_argument("ExperimentConfig: info_bits must be >= 1");
  }
  if (ebno_points.empty()) {
    throw std::invalid_argument("ExperimentConfig: no ebno points");
  }
  if (schemes.empty()) {
    throw std::invalid_argument("ExperimentConfig: no schemes");
  }
  code_spec.validate();
  rs_params.validate();
  DecodeConfig dc;
  dc.lock_mode = lock_mode;
  dc.ntc_count = ntc_count;
  dc.validate();
}

void SweepTable::recompute_totals() {
  total_residual.clear();
  total_bits.clear();
  for (const PointResult& row : rows) {
    total_residual[row.scheme] += row.residual_errors;
    total_bits[row.scheme] += row.info_bits;
  }
}

std::uint64_t count_residual(const BitVec& original, const BitVec& decoded) {
  if (original.size() != decoded.size()) {
    throw std::invalid_argument("count_residual: length mismatch");
  }
  std::uint64_t errors = 0;
  for (std::size_t i = 0; i < original.size(); ++i) {
    errors += original[i] != decoded[i];
  }
  return errors;
}

PointResult run_point(const ExperimentConfig& cfg, double ebno_db,
                      Scheme scheme) {
  cfg.validate();
  return run_point_with_ntc(cfg, ebno_db, scheme, cfg.ntc_count);
}

SweepTable run_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  struct Task {
    double ebno;
    Scheme scheme;
  };
  std::vector<Task> tasks;
  for (double ebno : cfg.ebno_points) {
    for (Scheme scheme : cfg.schemes) {
      tasks.push_back({ebno, scheme});
    }
  }
  SweepTable table;
  table.rows.resize(tasks.size());
  run_tasks(cfg.threads, tasks.size(), [&](std::size_t i) {
    table.rows[i] = run_point_with_ntc(cfg, tasks[i].ebno, tasks[i].scheme,
                                       cfg.ntc_count);
  });
  std::stable_sort(table.rows.begin(), table.rows.end(),
                   [](const PointResult& a, const PointResult& b) {
                     if (a.ebno_db != b.ebno_db) {
                       return a.ebno_db < b.ebno_db;
                     }
                     return static_cast<int>(a.scheme) <
                            static_cast<int>(b.scheme);
                   });
  table.recompute_totals();
  return table;
}

SweepTable ntc_study(const ExperimentConfig& cfg,
                     const std::vector<int>& ntc_values) {
  cfg.validate();
  if (cfg.lock_mode == LockMode::Unlocked) {
    throw std::invalid_argument("ntc_study: requires a locked mode");
  }
  if (ntc_values.empty()) {
    throw std::invalid_argument("ntc_study: no NTC values");
  }
  struct Task {
    double ebno;
    int ntc;
  };
  std::vector<Task> tasks;
  for (double ebno : cfg.ebno_points) {
    for (int ntc : ntc_values) {
      tasks.push_back({ebno, ntc});
    }
  }
  SweepTable table;
  table.rows.resize(tasks.size());
  run_tasks(cfg.threads, tasks.size(), [&](std::size_t i) {
    table.rows[i] =
        run_point_with_ntc(cfg, tasks[i].ebno, Scheme::SvadNtc, tasks[i].ntc);
  });
  std::stable_sort(table.rows.begin(), table.rows.end(),
                   [](const PointResult& a, const PointResult& b) {
                     if (a.ebno_db != b.ebno_db) {
                       return a.ebno_db < b.ebno_db;
                     }
                     return a.ntc_count < b.ntc_count;
                   });
  table.recompute_totals();
  return table;
}

std::string emit_csv(const SweepTable& table) {
  std::string out = "ebno_db,scheme,info_bits,residual_errors,ber,seed,params\n";
  char line[320];
  for (const PointResult& row : table.rows) {
    std::snprintf(line, sizeof(line), "%g,%s,%llu,%llu,%.6g,%llu,%s\n",
                  row.ebno_db, to_string(row.scheme),
                  static_cast<unsigned long long>(row.info_bits),
                  static_cast<unsigned long long>(row.residual_errors),
                  row.ber, static_cast<unsigned long long>(row.seed),
                  row.params.c_str());
    out += line;
  }
  return out;
}

std::string emit_dat(const SweepTable& table, Scheme scheme) {
  std::string out;
  char line[80];
  for (const PointResult& row : table.rows) {
    if (row.scheme != scheme) {
      continue;
    }
    std::snprintf(line, sizeof(line), "%g %llu\n", row.ebno_db,
                  static_cast<unsigned long long>(row.residual_errors));
    out += line;
  }
  return out;
}

}  // namespace ntcfec
