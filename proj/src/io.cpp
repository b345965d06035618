#include "ntcfec/io.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "ntcfec/errors.hpp"

namespace ntcfec {
namespace {

constexpr char kSampleMagic[4] = {'N', 'T', 'C', 'S'};
constexpr char kBitMagic[4] = {'N', 'T', 'C', 'F'};
constexpr std::uint8_t kVersion = 0x01;

void append_u64_le(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
}

void append_f32_le(std::string& out, float v) {
  static_assert(sizeof(float) == 4);
  const auto raw = std::bit_cast<std::uint32_t>(v);
  for (int i = 0; i < 4; ++i) {
    out.push_back(static_cast<char>((raw >> (8 * i)) & 0xFF));
  }
}

std::string read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    throw IoError("read failure on " + path.string());
  }
  return std::move(buffer).str();
}

std::uint64_t parse_u64_le(const std::string& data, std::size_t offset) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) {
    v = (v << 8) | static_cast<std::uint8_t>(data[offset + i]);
  }
  return v;
}

void check_header(const std::string& data, const char (&magic)[4],
                  const std::filesystem::path& path) {
  if (data.size() < 13) {
    throw FormatError("truncated header in " + path.string());
  }
  if (std::memcmp(data.data(), magic, 4) != 0) {
    throw FormatError("bad magic in " + path.string());
  }
  if (static_cast<std::uint8_t>(data[4]) != kVersion) {
    throw FormatError("unsupported version in " + path.string());
  }
}

}  // namespace

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& bytes) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw IoError("cannot create " + tmp.string());
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
      throw IoError("write failure on " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    throw IoError("cannot rename " + tmp.string() + " to " + path.string());
  }
}

void write_sample_file(const std::filesystem::path& path,
                       const SoftSequence& seq) {
  std::string bytes;
  bytes.reserve(13 + seq.samples.size() * 4);
  bytes.append(kSampleMagic, 4);
  bytes.push_back(static_cast<char>(kVersion));
  append_u64_le(bytes, seq.samples.size());
  for (double s : seq.samples) {
    append_f32_le(bytes, static_cast<float>(s));
  }
  write_file_atomic(path, bytes);
}

SoftSequence read_sample_file(const std::filesystem::path& path) {
  const std::string data = read_all(path);
  check_header(data, kSampleMagic, path);
  const std::uint64_t count = parse_u64_le(data, 5);
  if (data.size() != 13 + count * 4) {
    throw FormatError("sample count mismatch in " + path.string());
  }
  SoftSequence seq;
  seq.samples.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    std::uint32_t raw = 0;
    for (int b = 3; b >= 0; --b) {
      raw = (raw << 8) | static_cast<std::uint8_t>(data[13 + i * 4 + b]);
    }
    const float v = std::bit_cast<float>(raw);
    if (!std::isfinite(v)) {
      throw FormatError("non-finite sample in " + path.string());
    }
    seq.samples.push_back(static_cast<double>(v));
  }
  return seq;
}

void write_bit_file(const std::filesystem::path& path, const BitVec& bits) {
  std::string bytes;
  bytes.reserve(13 + bits.size() / 8 + 1);
  bytes.append(kBitMagic, 4);
  bytes.push_back(static_cast<char>(kVersion));
  append_u64_le(bytes, bits.size());
  std::uint8_t acc = 0;
  int filled = 0;
  for (Bit b : bits) {
    acc = static_cast<std::uint8_t>((acc << 1) | (b & 1));
    if (++filled == 8) {
      bytes.push_back(static_cast<char>(acc));
      acc = 0;
      filled = 0;
    }
  }
  if (filled > 0) {
    bytes.push_back(static_cast<char>(acc << (8 - filled)));
  }
  write_file_atomic(path, bytes);
}

BitVec read_bit_file(const std::filesystem::path& path) {
  const std::string data = read_all(path);
  check_header(data, kBitMagic, path);
  const std::uint64_t count = parse_u64_le(data, 5);
  if (data.size() != 13 + (count + 7) / 8) {
    throw FormatError("bit count mismatch in " + path.string());
  }
  BitVec bits;
  bits.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint8_t byte = static_cast<std::uint8_t>(data[13 + i / 8]);
    bits.push_back(static_cast<Bit>((byte >> (7 - i % 8)) & 1));
  }
  return bits;
}

void write_manifest(const std::filesystem::path& path,
                    const Manifest& entries) {
  std::string bytes;
  for (const auto& [key, value] : entries) {
    bytes += key;
    bytes += '=';
    bytes += value;
    bytes += '\n';
  }
  write_file_atomic(path, bytes);
}

Manifest read_manifest(const std::filesystem::path& path) {
  const std::string data = read_all(path);
  Manifest entries;
  std::istringstream lines(data);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw FormatError("malformed manifest line in " + path.string());
    }
    entries.emplace_back(line.substr(0, eq), line.substr(eq + 1));
  }
  return entries;
}

const std::string* manifest_get(const Manifest& entries,
                                const std::string& key) {
  for (const auto& [k, v] : entries) {
    if (k == key) {
      return &v;
    }
  }
  return nullptr;
}

}  // namespace ntcfec
