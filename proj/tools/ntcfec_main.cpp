// ntcfec command line: encode / corrupt / decode drive the file pipeline
// (NTCF bits -> NTCS samples and back); sweep and ntc-study run the Monte
// Carlo campaigns; trellis-dump prints a code's state machine.
//
// Exit codes: 0 ok, 1 usage, 2 I/O, 3 data format.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ntcfec/errors.hpp"
#include "ntcfec/harness.hpp"
#include "ntcfec/io.hpp"

namespace fs = std::filesystem;
using namespace ntcfec;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitFormat = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find(sep, start);
    if (end == std::string::npos) {
      parts.push_back(text.substr(start));
      break;
    }
    parts.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return parts;
}

std::vector<std::uint32_t> parse_generators(const std::string& text) {
  std::vector<std::uint32_t> gens;
  for (const std::string& token : split(text, ',')) {
    if (token.empty()) {
      throw UsageError("--generators: empty octal value");
    }
    std::uint32_t value = 0;
    for (char c : token) {
      if (c < '0' || c > '7') {
        throw UsageError("--generators: '" + token + "' is not octal");
      }
      value = value * 8 + static_cast<std::uint32_t>(c - '0');
    }
    gens.push_back(value);
  }
  if (gens.size() < 2) {
    throw UsageError("--generators: need at least two masks");
  }
  return gens;
}

int generator_constraint_length(const std::vector<std::uint32_t>& gens) {
  std::uint32_t all = 0;
  for (std::uint32_t g : gens) {
    all |= g;
  }
  int v = 0;
  while (all >> v) {
    ++v;
  }
  return std::max(v, 2);
}

LockMode parse_lock(const std::string& token) {
  if (token == "lower") return LockMode::Lower;
  if (token == "higher") return LockMode::Higher;
  if (token == "none") return LockMode::Unlocked;
  throw UsageError("--lock: expected lower|higher|none, got '" + token + "'");
}

Normalization parse_normalization(const std::string& token) {
  if (token == "info") return Normalization::PerInfoBit;
  if (token == "symbol") return Normalization::PerSymbol;
  throw UsageError("--normalization: expected info|symbol, got '" + token + "'");
}

// "1,2,3", "1..11" and "0..8:0.5" forms, comma separated.
std::vector<double> parse_ebno_list(const std::string& text) {
  std::vector<double> points;
  for (const std::string& token : split(text, ',')) {
    const auto range = token.find("..");
    if (range == std::string::npos) {
      points.push_back(std::stod(token));
      continue;
    }
    const double lo = std::stod(token.substr(0, range));
    std::string rest = token.substr(range + 2);
    double step = 1.0;
    if (const auto colon = rest.find(':'); colon != std::string::npos) {
      step = std::stod(rest.substr(colon + 1));
      rest = rest.substr(0, colon);
    }
    const double hi = std::stod(rest);
    if (step <= 0 || hi < lo) {
      throw UsageError("--ebno: bad range '" + token + "'");
    }
    for (double v = lo; v <= hi + 1e-9; v += step) {
      points.push_back(v);
    }
  }
  if (points.empty()) {
    throw UsageError("--ebno: empty list");
  }
  return points;
}

RsParams parse_rs(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) {
    throw UsageError("--rs: expected n,k");
  }
  RsParams rs;
  rs.n = std::stoi(parts[0]);
  rs.k = std::stoi(parts[1]);
  return rs;
}

struct CommonFlags {
  std::string generators = "7,5";
  std::string lock = "lower";
  int ntc = 6;
  std::uint64_t seed = 1;
  std::string normalization = "symbol";
  bool no_flush = false;
};

void add_code_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--generators", flags.generators,
                  "octal tap masks, e.g. 7,5 or 6,5");
  cmd->add_option("--lock", flags.lock, "lock mode: lower|higher|none");
  cmd->add_option("--ntc", flags.ntc, "NTC symbol pairs appended at decode")
      ->check(CLI::Range(0, 64));
  cmd->add_flag("--no-flush", flags.no_flush,
                "skip the zero flush tail for unlocked streams");
}

CodeSpec make_spec(const CommonFlags& flags) {
  CodeSpec spec;
  spec.generators = parse_generators(flags.generators);
  spec.constraint_length = generator_constraint_length(spec.generators);
  spec.validate();
  return spec;
}

DecodeConfig make_decode_config(const CommonFlags& flags) {
  DecodeConfig cfg;
  cfg.lock_mode = parse_lock(flags.lock);
  cfg.ntc_count = cfg.lock_mode == LockMode::Unlocked ? 0 : flags.ntc;
  cfg.unlocked_flush = !flags.no_flush;
  return cfg;
}

BitVec read_input_bits(const fs::path& path, bool raw) {
  if (!raw) {
    std::FILE* probe = std::fopen(path.string().c_str(), "rb");
    if (!probe) {
      throw IoError("cannot open " + path.string());
    }
    char magic[4] = {};
    const bool is_ntcf =
        std::fread(magic, 1, 4, probe) == 4 && std::string(magic, 4) == "NTCF";
    std::fclose(probe);
    if (is_ntcf) {
      return read_bit_file(path);
    }
  }
  std::FILE* f = std::fopen(path.string().c_str(), "rb");
  if (!f) {
    throw IoError("cannot open " + path.string());
  }
  BitVec bits;
  int c;
  while ((c = std::fgetc(f)) != EOF) {
    for (int j = 7; j >= 0; --j) {
      bits.push_back(static_cast<Bit>((c >> j) & 1));
    }
  }
  std::fclose(f);
  return bits;
}

fs::path manifest_path(const fs::path& file) {
  fs::path p = file;
  p += ".manifest";
  return p;
}

int cmd_encode(const std::string& input, const std::string& output,
               const CommonFlags& flags, bool raw) {
  const CodeSpec spec = make_spec(flags);
  const DecodeConfig cfg = make_decode_config(flags);
  const BitVec data = read_input_bits(input, raw);
  const SoftSequence samples = encode_pipeline(spec, data, cfg);
  write_sample_file(output, samples);

  Manifest manifest{
      {"generators", flags.generators},
      {"lock", to_string(cfg.lock_mode)},
      {"ntc", std::to_string(cfg.ntc_count)},
      {"seed", std::to_string(flags.seed)},
      {"normalization", flags.normalization},
      {"flush", cfg.unlocked_flush ? "1" : "0"},
  };
  write_manifest(manifest_path(output), manifest);

  const double rate =
      samples.samples.empty()
          ? 0.0
          : static_cast<double>(data.size()) / samples.samples.size();
  std::printf("encoded %zu data bits -> %zu samples (effective rate %.4f)\n",
              data.size(), samples.samples.size(), rate);
  std::printf("wrote %s (+.manifest)\n", output.c_str());
  return kExitOk;
}

int cmd_corrupt(const std::string& input, const std::string& output,
                std::optional<double> sigma_flag,
                std::optional<double> ebno_flag, const CommonFlags& flags,
                double rate) {
  SoftSequence seq = read_sample_file(input);
  double sigma = 0.0;
  if (sigma_flag && ebno_flag) {
    throw UsageError("--sigma and --ebno are mutually exclusive");
  }
  if (sigma_flag) {
    sigma = *sigma_flag;
    if (sigma < 0) {
      throw UsageError("--sigma: must be >= 0");
    }
  } else if (ebno_flag) {
    NoiseSpec spec;
    spec.ebno_db = *ebno_flag;
    spec.normalization = parse_normalization(flags.normalization);
    spec.code_rate = rate;
    sigma = noise_sigma(spec);
  } else {
    throw UsageError("corrupt needs --sigma or --ebno");
  }
  RngStream rng = derive_stream(flags.seed, {});
  const SoftSequence noisy = awgn(seq, sigma, rng);
  write_sample_file(output, noisy);
  // Carry the encode-time manifest forward so decode can still find it.
  if (fs::exists(manifest_path(input)) && input != output) {
    write_manifest(manifest_path(output), read_manifest(manifest_path(input)));
  }
  std::printf("corrupted %zu samples with sigma %.6g (seed %llu)\n",
              noisy.samples.size(), sigma,
              static_cast<unsigned long long>(flags.seed));
  return kExitOk;
}

int cmd_decode(const std::string& input, const std::string& output,
               CommonFlags flags, const std::vector<bool>& explicit_flags) {
  // Manifest values fill in whatever the caller did not set explicitly.
  const fs::path sidecar = manifest_path(input);
  if (fs::exists(sidecar)) {
    const Manifest manifest = read_manifest(sidecar);
    const auto use = [&](int idx, const char* key, auto apply) {
      if (!explicit_flags[idx]) {
        if (const std::string* v = manifest_get(manifest, key)) {
          apply(*v);
        }
      }
    };
    use(0, "generators", [&](const std::string& v) { flags.generators = v; });
    use(1, "lock", [&](const std::string& v) { flags.lock = v; });
    use(2, "ntc", [&](const std::string& v) { flags.ntc = std::stoi(v); });
    use(3, "flush",
        [&](const std::string& v) { flags.no_flush = v == "0"; });
  }
  const CodeSpec spec = make_spec(flags);
  const DecodeConfig cfg = make_decode_config(flags);
  SoftSequence seq = read_sample_file(input);
  seq.symbol_width = spec.output_bits();
  DecodeResult detail;
  const BitVec data = decode_pipeline(seq, spec, cfg, &detail);
  write_bit_file(output, data);
  std::printf("decoded %zu samples -> %zu data bits, final path metric %.6g\n",
              seq.samples.size(), data.size(), detail.final_metric);
  return kExitOk;
}

void print_table(const SweepTable& table) {
  std::printf("%8s %-8s %12s %16s %12s\n", "ebno_db", "scheme", "info_bits",
              "residual_errors", "ber");
  for (const PointResult& row : table.rows) {
    std::printf("%8g %-8s %12llu %16llu %12.6g\n", row.ebno_db,
                to_string(row.scheme),
                static_cast<unsigned long long>(row.info_bits),
                static_cast<unsigned long long>(row.residual_errors), row.ber);
  }
  for (const auto& [scheme, total] : table.total_residual) {
    std::printf("total %-8s %llu\n", to_string(scheme),
                static_cast<unsigned long long>(total));
  }
}

void write_outputs(const SweepTable& table, const std::string& out,
                   const std::string& format) {
  if (format == "csv") {
    write_file_atomic(out, emit_csv(table));
    std::printf("wrote %s\n", out.c_str());
    return;
  }
  if (format != "dat") {
    throw UsageError("--format: expected csv|dat");
  }
  std::vector<Scheme> seen;
  for (const PointResult& row : table.rows) {
    if (std::find(seen.begin(), seen.end(), row.scheme) == seen.end()) {
      seen.push_back(row.scheme);
    }
  }
  for (Scheme scheme : seen) {
    fs::path path(out);
    fs::path named = path.parent_path() /
                     (path.stem().string() + "_" + to_string(scheme) +
                      path.extension().string());
    write_file_atomic(named, emit_dat(table, scheme));
    std::printf("wrote %s\n", named.string().c_str());
  }
}

ExperimentConfig make_experiment(const CommonFlags& flags,
                                 std::uint64_t bits, const std::string& ebno,
                                 const std::string& schemes,
                                 const std::string& rs,
                                 std::uint64_t frame_len, int threads) {
  ExperimentConfig cfg;
  cfg.info_bits = bits;
  cfg.ebno_points = parse_ebno_list(ebno);
  cfg.schemes.clear();
  for (const std::string& token : split(schemes, ',')) {
    cfg.schemes.push_back(parse_scheme(token));
  }
  cfg.master_seed = flags.seed;
  cfg.code_spec = make_spec(flags);
  cfg.lock_mode = parse_lock(flags.lock);
  cfg.ntc_count = cfg.lock_mode == LockMode::Unlocked ? 0 : flags.ntc;
  cfg.rs_params = parse_rs(rs);
  cfg.normalization = parse_normalization(flags.normalization);
  cfg.frame_len_bits = frame_len;
  cfg.threads = threads;
  return cfg;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"locked convolutional + soft Viterbi (NTC) vs Reed-Solomon "
               "storage-channel simulator"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string input, output;
  std::string ebno_list = "1..11";
  std::string schemes = "svad,rs";
  std::string rs_text = "255,223";
  std::string format = "csv";
  std::uint64_t bits = 1'000'000;
  std::uint64_t frame_len = 0;
  int threads = 0;
  bool raw = false;
  std::optional<double> sigma_flag;
  std::optional<double> ebno_flag;
  double corrupt_rate = 1.0;
  std::string ntc_values = "0,1,2,3,4,5,6,7,8";

  CLI::App* encode = app.add_subcommand("encode", "bit file -> sample file");
  encode->add_option("input", input, "NTCF bit file or raw byte file")
      ->required();
  encode->add_option("--out", output, "output NTCS sample file")->required();
  encode->add_flag("--raw", raw, "treat input as raw bytes even if it looks like NTCF");
  add_code_flags(encode, flags);
  encode->add_option("--seed", flags.seed, "seed recorded in the manifest");
  encode->add_option("--normalization", flags.normalization,
                     "recorded in the manifest: info|symbol");

  CLI::App* corrupt = app.add_subcommand("corrupt", "add AWGN to a sample file");
  corrupt->add_option("input", input, "NTCS sample file")->required();
  corrupt->add_option("--out", output, "output NTCS sample file")->required();
  corrupt->add_option("--sigma", sigma_flag, "noise standard deviation");
  corrupt->add_option("--ebno", ebno_flag, "Eb/N0 in dB (uses --normalization)");
  corrupt->add_option("--normalization", flags.normalization, "info|symbol");
  corrupt->add_option("--rate", corrupt_rate,
                      "code rate for info normalization");
  corrupt->add_option("--seed", flags.seed, "noise seed");

  CLI::App* decode = app.add_subcommand("decode", "sample file -> bit file");
  decode->add_option("input", input, "NTCS sample file")->required();
  decode->add_option("--out", output, "output NTCF bit file")->required();
  add_code_flags(decode, flags);
  decode->add_option("--seed", flags.seed, "unused, accepted for symmetry");

  CLI::App* sweep = app.add_subcommand("sweep", "run the residual-error experiment");
  add_code_flags(sweep, flags);
  sweep->add_option("--ebno", ebno_list, "dB list: 1,2,3 or 1..11 or 0..8:0.5");
  sweep->add_option("--bits", bits, "information bits per point");
  sweep->add_option("--seed", flags.seed, "master seed");
  sweep->add_option("--normalization", flags.normalization, "info|symbol");
  sweep->add_option("--rs", rs_text, "Reed-Solomon n,k");
  sweep->add_option("--schemes", schemes, "comma list: svad,rs,uncoded,soft,hard");
  sweep->add_option("--frame-len", frame_len, "data bits per decode frame (0 = all)");
  sweep->add_option("--threads", threads, "worker threads (0 = auto)");
  sweep->add_option("--out", output, "output file");
  sweep->add_option("--format", format, "csv|dat");

  CLI::App* study = app.add_subcommand("ntc-study", "sweep the NTC count");
  add_code_flags(study, flags);
  study->add_option("--ntc-values", ntc_values, "comma list of NTC counts");
  study->add_option("--ebno", ebno_list, "dB list");
  study->add_option("--bits", bits, "information bits per point");
  study->add_option("--seed", flags.seed, "master seed");
  study->add_option("--normalization", flags.normalization, "info|symbol");
  study->add_option("--frame-len", frame_len, "data bits per decode frame (0 = all)");
  study->add_option("--threads", threads, "worker threads (0 = auto)");
  study->add_option("--out", output, "output file");
  study->add_option("--format", format, "csv|dat");

  CLI::App* dump = app.add_subcommand("trellis-dump", "print the state machine");
  add_code_flags(dump, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (encode->parsed()) {
    return cmd_encode(input, output, flags, raw);
  }
  if (corrupt->parsed()) {
    return cmd_corrupt(input, output, sigma_flag, ebno_flag, flags,
                       corrupt_rate);
  }
  if (decode->parsed()) {
    const std::vector<bool> explicit_flags{
        decode->count("--generators") > 0, decode->count("--lock") > 0,
        decode->count("--ntc") > 0, decode->count("--no-flush") > 0};
    return cmd_decode(input, output, flags, explicit_flags);
  }
  if (sweep->parsed()) {
    const ExperimentConfig cfg = make_experiment(flags, bits, ebno_list,
                                                 schemes, rs_text, frame_len,
                                                 threads);
    const SweepTable table = run_sweep(cfg);
    print_table(table);
    if (!output.empty()) {
      write_outputs(table, output, format);
    }
    return kExitOk;
  }
  if (study->parsed()) {
    ExperimentConfig cfg = make_experiment(flags, bits, ebno_list, "svad",
                                           rs_text, frame_len, threads);
    std::vector<int> values;
    for (const std::string& token : split(ntc_values, ',')) {
      values.push_back(std::stoi(token));
    }
    const SweepTable table = ntc_study(cfg, values);
    std::printf("%8s %6s %12s %16s %12s\n", "ebno_db", "ntc", "info_bits",
                "residual_errors", "ber");
    for (const PointResult& row : table.rows) {
      std::printf("%8g %6d %12llu %16llu %12.6g\n", row.ebno_db, row.ntc_count,
                  static_cast<unsigned long long>(row.info_bits),
                  static_cast<unsigned long long>(row.residual_errors),
                  row.ber);
    }
    if (!output.empty()) {
      write_outputs(table, output, format);
    }
    return kExitOk;
  }
  if (dump->parsed()) {
    const CodeSpec spec = make_spec(flags);
    const LockMode lock = parse_lock(flags.lock);
    const Trellis trellis = build_trellis(spec, lock);
    std::printf("generators (octal): %s, constraint length %d, rate 1/%d\n",
                flags.generators.c_str(), spec.constraint_length,
                spec.output_bits());
    if (spec.catastrophic()) {
      std::printf("warning: catastrophic code (generators share a common "
                  "factor)\n");
    }
    for (int s = 0; s < trellis.state_count; ++s) {
      for (int x = 0; x < 2; ++x) {
        const Transition& tr = trellis.transitions[s][x];
        std::string out;
        for (int j = 0; j < spec.output_bits(); ++j) {
          out += (tr.output >> j) & 1 ? '1' : '0';
        }
        std::printf("S%d --%d/%s--> S%d\n", s, x, out.c_str(), tr.next);
      }
    }
    if (trellis.excluded_state >= 0) {
      std::printf("excluded state: S%d (from step %zu, %s lock)\n",
                  trellis.excluded_state, trellis.excluded_from_step,
                  to_string(lock));
    } else {
      std::printf("excluded state: none\n");
    }
    return kExitOk;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  } catch (const FormatError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFormat;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
}
