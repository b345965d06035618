#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "ntcfec/bits.hpp"
#include "ntcfec/channel.hpp"

namespace ntcfec {

// NTCS sample file: magic "NTCS", version 0x01, sample count as u64 LE,
// samples as IEEE-754 float32 LE.
void write_sample_file(const std::filesystem::path& path,
                       const SoftSequence& seq);
SoftSequence read_sample_file(const std::filesystem::path& path);

// NTCF bit file: magic "NTCF", version 0x01, bit count as u64 LE, payload
// bits packed MSB-first, final byte zero-padded.
void write_bit_file(const std::filesystem::path& path, const BitVec& bits);
BitVec read_bit_file(const std::filesystem::path& path);

// Plain key=value sidecar, one pair per line, insertion order preserved.
using Manifest = std::vector<std::pair<std::string, std::string>>;
void write_manifest(const std::filesystem::path& path, const Manifest& entries);
Manifest read_manifest(const std::filesystem::path& path);
const std::string* manifest_get(const Manifest& entries, const std::string& key);

// All writers go through a temp file + rename so partially written outputs
// never appear under the final name.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& bytes);

}  // namespace ntcfec
