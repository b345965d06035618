#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ntcfec/harness.hpp"
#include "ntcfec/io.hpp"

namespace py = pybind11;
using namespace ntcfec;

namespace {

SoftSequence make_sequence(const std::vector<double>& samples, int width) {
  SoftSequence seq;
  seq.samples = samples;
  seq.symbol_width = width;
  return seq;
}

DecodeConfig make_decode_config(const std::string& lock, int ntc,
                                const std::string& metric, bool flush) {
  DecodeConfig cfg;
  if (lock == "lower") {
    cfg.lock_mode = LockMode::Lower;
  } else if (lock == "higher") {
    cfg.lock_mode = LockMode::Higher;
  } else if (lock == "none") {
    cfg.lock_mode = LockMode::Unlocked;
  } else {
    throw std::invalid_argument("lock must be lower|higher|none");
  }
  cfg.ntc_count = ntc;
  cfg.metric = metric == "hard" ? Metric::HardHamming : Metric::SoftEuclidean;
  cfg.unlocked_flush = flush;
  return cfg;
}

Normalization parse_norm(const std::string& name) {
  if (name == "info") {
    return Normalization::PerInfoBit;
  }
  if (name == "symbol") {
    return Normalization::PerSymbol;
  }
  throw std::invalid_argument("normalization must be info|symbol");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Locked convolutional + soft Viterbi (NTC) coding chains, "
            "Reed-Solomon baseline and the Monte Carlo harness.";

  py::class_<CodeSpec>(m, "CodeSpec")
      .def(py::init([](int constraint_length,
                       const std::vector<std::uint32_t>& generators) {
             CodeSpec spec{constraint_length, generators};
             spec.validate();
             return spec;
           }),
           py::arg("constraint_length") = 3,
           py::arg("generators") = std::vector<std::uint32_t>{07, 05})
      .def_readonly("constraint_length", &CodeSpec::constraint_length)
      .def_readonly("generators", &CodeSpec::generators)
      .def_property_readonly("rate", &CodeSpec::rate)
      .def_property_readonly("catastrophic", &CodeSpec::catastrophic);

  m.def("conv_encode", &conv_encode, py::arg("spec"), py::arg("bits"));
  m.def(
      "lock_insert",
      [](const BitVec& bits, const std::string& lock) {
        return lock_insert(bits, make_decode_config(lock, 0, "soft", true).lock_mode);
      },
      py::arg("bits"), py::arg("lock"));
  m.def(
      "lock_strip",
      [](const BitVec& bits, const std::string& lock) {
        return lock_strip(bits, make_decode_config(lock, 0, "soft", true).lock_mode);
      },
      py::arg("bits"), py::arg("lock"));

  m.def(
      "bpsk_modulate",
      [](const BitVec& bits) { return bpsk_modulate(bits).samples; },
      py::arg("bits"));
  m.def(
      "hard_slice",
      [](const std::vector<double>& samples) {
        return hard_slice(make_sequence(samples, 1));
      },
      py::arg("samples"));
  m.def(
      "noise_sigma",
      [](double ebno_db, const std::string& normalization, double code_rate) {
        return noise_sigma({ebno_db, parse_norm(normalization), code_rate});
      },
      py::arg("ebno_db"), py::arg("normalization") = "symbol",
      py::arg("code_rate") = 1.0);
  m.def(
      "awgn",
      [](const std::vector<double>& samples, double sigma, std::uint64_t seed,
         const std::vector<std::int64_t>& labels) {
        RngStream rng = derive_stream(seed, labels);
        return awgn(make_sequence(samples, 1), sigma, rng).samples;
      },
      py::arg("samples"), py::arg("sigma"), py::arg("seed"),
      py::arg("labels") = std::vector<std::int64_t>{});
  m.def(
      "normal_deviates",
      [](std::uint64_t seed, const std::vector<std::int64_t>& labels,
         std::size_t count) {
        RngStream rng = derive_stream(seed, labels);
        std::vector<double> out(count);
        for (auto& v : out) {
          v = rng.next_normal();
        }
        return out;
      },
      py::arg("seed"), py::arg("labels"), py::arg("count"));

  m.def(
      "encode_pipeline",
      [](const CodeSpec& spec, const BitVec& bits, const std::string& lock,
         bool flush) {
        return encode_pipeline(spec, bits, make_decode_config(lock, 0, "soft", flush))
            .samples;
      },
      py::arg("spec"), py::arg("bits"), py::arg("lock") = "lower",
      py::arg("flush") = true);
  m.def(
      "decode_pipeline",
      [](const CodeSpec& spec, const std::vector<double>& samples,
         const std::string& lock, int ntc, const std::string& metric,
         bool flush) {
        const DecodeConfig cfg = make_decode_config(lock, ntc, metric, flush);
        DecodeResult detail;
        const BitVec bits =
            decode_pipeline(make_sequence(samples, spec.output_bits()), spec,
                            cfg, &detail);
        return py::make_tuple(bits, detail.final_metric);
      },
      py::arg("spec"), py::arg("samples"), py::arg("lock") = "lower",
      py::arg("ntc") = 6, py::arg("metric") = "soft", py::arg("flush") = true);

  py::class_<RsParams>(m, "RsParams")
      .def(py::init([](int n, int k) {
             RsParams params{n, k};
             params.validate();
             return params;
           }),
           py::arg("n") = 255, py::arg("k") = 223)
      .def_readonly("n", &RsParams::n)
      .def_readonly("k", &RsParams::k)
      .def_property_readonly("t", &RsParams::t);

  m.def("rs_encode", &rs_encode, py::arg("params"), py::arg("message"));
  m.def(
      "rs_decode",
      [](const RsParams& params, const std::vector<std::uint8_t>& received) {
        const auto [msg, status] = rs_decode(params, received);
        const char* kind = status.kind == RsStatusKind::Clean ? "clean"
                           : status.kind == RsStatusKind::Corrected
                               ? "corrected"
                               : "failure";
        return py::make_tuple(msg, kind, status.corrected);
      },
      py::arg("params"), py::arg("received"));
  m.def("pack_bits", &pack_bits, py::arg("bits"));
  m.def("unpack_bits", &unpack_bits, py::arg("symbols"));

  m.def(
      "run_sweep",
      [](std::uint64_t info_bits, const std::vector<double>& ebno_points,
         const std::vector<std::string>& schemes, std::uint64_t seed,
         const std::string& lock, int ntc, const std::string& normalization,
         std::uint64_t frame_len, int threads) {
        ExperimentConfig cfg;
        cfg.info_bits = info_bits;
        cfg.ebno_points = ebno_points;
        cfg.schemes.clear();
        for (const std::string& s : schemes) {
          cfg.schemes.push_back(parse_scheme(s));
        }
        cfg.master_seed = seed;
        cfg.lock_mode = make_decode_config(lock, 0, "soft", true).lock_mode;
        cfg.ntc_count = cfg.lock_mode == LockMode::Unlocked ? 0 : ntc;
        cfg.normalization = parse_norm(normalization);
        cfg.frame_len_bits = frame_len;
        cfg.threads = threads;
        const SweepTable table = run_sweep(cfg);
        py::list rows;
        for (const PointResult& row : table.rows) {
          py::dict d;
          d["ebno_db"] = row.ebno_db;
          d["scheme"] = to_string(row.scheme);
          d["info_bits"] = row.info_bits;
          d["residual_errors"] = row.residual_errors;
          d["ber"] = row.ber;
          rows.append(d);
        }
        return py::make_tuple(rows, emit_csv(table));
      },
      py::arg("info_bits") = 10000,
      py::arg("ebno_points") = std::vector<double>{1, 2, 3},
      py::arg("schemes") = std::vector<std::string>{"svad", "rs"},
      py::arg("seed") = 1, py::arg("lock") = "lower", py::arg("ntc") = 6,
      py::arg("normalization") = "symbol", py::arg("frame_len") = 0,
      py::arg("threads") = 0);

  m.def("write_sample_file",
        [](const std::string& path, const std::vector<double>& samples) {
          write_sample_file(path, make_sequence(samples, 1));
        });
  m.def("read_sample_file", [](const std::string& path) {
    return read_sample_file(path).samples;
  });
  m.def("write_bit_file", [](const std::string& path, const BitVec& bits) {
    write_bit_file(path, bits);
  });
  m.def("read_bit_file",
        [](const std::string& path) { return read_bit_file(path); });
}
