#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ntcfec/bits.hpp"

namespace ntcfec {

// GF(2^8) with primitive polynomial 0x11D and generator element alpha = 2.
// Decoder interop depends on these values, so they are fixed here rather
// than configurable.
namespace gf256 {

inline constexpr unsigned kPrimitivePoly = 0x11D;

std::uint8_t add(std::uint8_t a, std::uint8_t b);
std::uint8_t mul(std::uint8_t a, std::uint8_t b);
std::uint8_t inv(std::uint8_t a);  // throws on 0
std::uint8_t pow(std::uint8_t a, int e);
std::uint8_t alpha_pow(int e);  // alpha^e, e may be negative

}  // namespace gf256

struct RsParams {
  int n = 255;         // codeword symbols
  int k = 223;         // message symbols
  int first_root = 1;  // first consecutive root exponent b

  int parity() const { return n - k; }
  int t() const { return (n - k) / 2; }
  void validate() const;
};

enum class RsStatusKind { Clean, Corrected, Failure };

struct RsDecodeStatus {
  RsStatusKind kind = RsStatusKind::Clean;
  int corrected = 0;  // symbol positions changed (Corrected only)
};

// Systematic encoder: message symbols followed by the remainder of
// msg * x^(n-k) modulo the generator polynomial  prod_{i=0}^{n-k-1} (x - alpha^(b+i)).
std::vector<std::uint8_t> rs_encode(const RsParams& params,
                                    const std::vector<std::uint8_t>& msg);

// Syndromes -> Berlekamp-Massey -> Chien search -> Forney, with a syndrome
// re-check of the corrected word. On Failure the received message part is
// returned unchanged.
std::pair<std::vector<std::uint8_t>, RsDecodeStatus> rs_decode(
    const RsParams& params, const std::vector<std::uint8_t>& received);

// MSB-first packing; the final symbol is zero-padded.
std::vector<std::uint8_t> pack_bits(const BitVec& bits);
BitVec unpack_bits(const std::vector<std::uint8_t>& symbols);

}  // namespace ntcfec
