#include "ntcfec/reed_solomon.hpp"

#include <array>
#include <stdexcept>

namespace ntcfec {
namespace gf256 {
namespace {

struct Tables {
  std::array<std::uint8_t, 512> exp{};
  std::array<std::int16_t, 256> log{};
};

constexpr Tables build_tables() {
  Tables t{};
  unsigned value = 1;
  for (int i = 0; i < 255; ++i) {
    t.exp[i] = static_cast<std::uint8_t>(value);
    t.log[value] = static_cast<std::int16_t>(i);
    value <<= 1;
    if (value & 0x100) {
      value ^= kPrimitivePoly;
    }
  }
  for (int i = 255; i < 512; ++i) {
    t.exp[i] = t.exp[i - 255];
  }
  t.log[0] = -1;
  return t;
}

constexpr Tables kTables = build_tables();

}  // namespace

std::uint8_t add(std::uint8_t a, std::uint8_t b) {
  return a ^ b;
}

std::uint8_t mul(std::uint8_t a, std::uint8_t b) {
  if (a == 0 || b == 0) {
    return 0;
  }
  return kTables.exp[kTables.log[a] + kTables.log[b]];
}

std::uint8_t inv(std::uint8_t a) {
  if (a == 0) {
    throw std::invalid_argument("gf256: inverse of zero");
  }
  return kTables.exp[255 - kTables.log[a]];
}

std::uint8_t pow(std::uint8_t a, int e) {
  if (a == 0) {
    return e == 0 ? 1 : 0;
  }
  long exponent = (static_cast<long>(kTables.log[a]) * e) % 255;
  if (exponent < 0) {
    exponent += 255;
  }
  return kTables.exp[exponent];
}

std::uint8_t alpha_pow(int e) {
  int exponent = e % 255;
  if (exponent < 0) {
    exponent += 255;
  }
  return kTables.exp[exponent];
}

}  // namespace gf256

void RsParams::validate() const {
  if (n < 3 || n > 255) {
    throw std::invalid_argument("RsParams: n outside [3, 255]");
  }
  if (k < 1 || k >= n) {
    throw std::invalid_argument("RsParams: k must satisfy 1 <= k < n");
  }
  if ((n - k) % 2 != 0) {
    throw std::invalid_argument("RsParams: n - k must be even");
  }
  if (t() < 1) {
    throw std::invalid_argument("RsParams: t must be >= 1");
  }
}

namespace {

using gf256::alpha_pow;
using gf256::mul;

// Generator polynomial, descending powers, leading coefficient 1.
std::vector<std::uint8_t> generator_poly(const RsParams& params) {
  std::vector<std::uint8_t> gen{1};
  for (int i = 0; i < params.parity(); ++i) {
    const std::uint8_t root = alpha_pow(params.first_root + i);
    std::vector<std::uint8_t> next(gen.size() + 1, 0);
    for (std::size_t j = 0; j < gen.size(); ++j) {
      next[j] ^= gen[j];
      next[j + 1] ^= mul(gen[j], root);
    }
    gen = std::move(next);
  }
  return gen;
}

// Syndrome S_j = r(alpha^(b+j)); received[0] is the highest-power
// coefficient. Returns true when all syndromes are zero.
bool compute_syndromes(const RsParams& params,
                       const std::vector<std::uint8_t>& received,
                       std::vector<std::uint8_t>& syndromes) {
  syndromes.assign(params.parity(), 0);
  bool clean = true;
  for (int j = 0; j < params.parity(); ++j) {
    const std::uint8_t point = alpha_pow(params.first_root + j);
    std::uint8_t acc = 0;
    for (std::uint8_t symbol : received) {
      acc = static_cast<std::uint8_t>(mul(acc, point) ^ symbol);
    }
    syndromes[j] = acc;
    clean = clean && acc == 0;
  }
  return clean;
}

// Berlekamp-Massey: error locator from the syndromes, ascending powers,
// lambda[0] = 1.
std::vector<std::uint8_t> berlekamp_massey(
    const std::vector<std::uint8_t>& syndromes) {
  std::vector<std::uint8_t> lambda{1};
  std::vector<std::uint8_t> prev{1};
  int length = 0;
  int shift = 1;
  std::uint8_t prev_discrepancy = 1;
  for (std::size_t i = 0; i < syndromes.size(); ++i) {
    std::uint8_t discrepancy = syndromes[i];
    for (int j = 1; j <= length; ++j) {
      if (j < static_cast<int>(lambda.size())) {
        discrepancy ^= mul(lambda[j], syndromes[i - j]);
      }
    }
    if (discrepancy == 0) {
      ++shift;
      continue;
    }
    std::vector<std::uint8_t> candidate = lambda;
    const std::uint8_t scale = mul(discrepancy, gf256::inv(prev_discrepancy));
    if (candidate.size() < prev.size() + shift) {
      candidate.resize(prev.size() + shift, 0);
    }
    for (std::size_t j = 0; j < prev.size(); ++j) {
      candidate[j + shift] ^= mul(scale, prev[j]);
    }
    if (2 * length <= static_cast<int>(i)) {
      prev = lambda;
      prev_discrepancy = discrepancy;
      length = static_cast<int>(i) + 1 - length;
      shift = 1;
    } else {
      ++shift;
    }
    lambda = std::move(candidate);
  }
  while (!lambda.empty() && lambda.back() == 0) {
    lambda.pop_back();
  }
  return lambda;
}

std::uint8_t eval_poly(const std::vector<std::uint8_t>& poly_ascending,
                       std::uint8_t x) {
  std::uint8_t acc = 0;
  for (std::size_t i = poly_ascending.size(); i-- > 0;) {
    acc = static_cast<std::uint8_t>(mul(acc, x) ^ poly_ascending[i]);
  }
  return acc;
}

}  // namespace

std::vector<std::uint8_t> rs_encode(const RsParams& params,
                                    const std::vector<std::uint8_t>& msg) {
  params.validate();
  if (static_cast<int>(msg.size()) != params.k) {
    throw std::invalid_argument("rs_encode: message length != k");
  }
  const std::vector<std::uint8_t> gen = generator_poly(params);
  std::vector<std::uint8_t> parity(params.parity(), 0);
  for (std::uint8_t symbol : msg) {
    const std::uint8_t feedback = static_cast<std::uint8_t>(symbol ^ parity[0]);
    for (int j = 0; j < params.parity(); ++j) {
      const std::uint8_t tail =
          j + 1 < params.parity() ? parity[j + 1] : std::uint8_t{0};
      parity[j] = static_cast<std::uint8_t>(tail ^ mul(feedback, gen[j + 1]));
    }
  }
  std::vector<std::uint8_t> codeword = msg;
  codeword.insert(codeword.end(), parity.begin(), parity.end());
  return codeword;
}

std::pair<std::vector<std::uint8_t>, RsDecodeStatus> rs_decode(
    const RsParams& params, const std::vector<std::uint8_t>& received) {
  params.validate();
  if (static_cast<int>(received.size()) != params.n) {
    throw std::invalid_argument("rs_decode: received length != n");
  }
  const auto message_part = [&](const std::vector<std::uint8_t>& word) {
    return std::vector<std::uint8_t>(word.begin(), word.begin() + params.k);
  };

  std::vector<std::uint8_t> syndromes;
  if (compute_syndromes(params, received, syndromes)) {
    return {message_part(received), {RsStatusKind::Clean, 0}};
  }

  const RsDecodeStatus failure{RsStatusKind::Failure, 0};
  const std::vector<std::uint8_t> lambda = berlekamp_massey(syndromes);
  const int degree = static_cast<int>(lambda.size()) - 1;
  if (degree < 1 || degree > params.t()) {
    return {message_part(received), failure};
  }

  // Chien search over the n valid positions: received index j corresponds to
  // locator root alpha^-(n-1-j).
  std::vector<int> error_positions;
  for (int e = 0; e < params.n; ++e) {
    if (eval_poly(lambda, alpha_pow(-e)) == 0) {
      error_positions.push_back(params.n - 1 - e);
    }
  }
  if (static_cast<int>(error_positions.size()) != degree) {
    return {message_part(received), failure};
  }

  // Forney: Omega(x) = S(x) * Lambda(x) mod x^(n-k); the magnitude at
  // X = alpha^e is X^(1-b) * Omega(X^-1) / Lambda'(X^-1).
  std::vector<std::uint8_t> omega(params.parity(), 0);
  for (int i = 0; i < params.parity(); ++i) {
    for (int j = 0; j <= i && j < static_cast<int>(lambda.size()); ++j) {
      omega[i] ^= mul(lambda[j], syndromes[i - j]);
    }
  }

  std::vector<std::uint8_t> corrected = received;
  int changed = 0;
  for (int pos : error_positions) {
    const int e = params.n - 1 - pos;
    const std::uint8_t x_inv = alpha_pow(-e);
    std::uint8_t denom = 0;  // Lambda'(x) keeps only odd-power terms
    for (std::size_t j = 1; j < lambda.size(); j += 2) {
      denom ^= mul(lambda[j], gf256::pow(x_inv, static_cast<int>(j - 1)));
    }
    if (denom == 0) {
      return {message_part(received), failure};
    }
    std::uint8_t magnitude = mul(eval_poly(omega, x_inv), gf256::inv(denom));
    magnitude = mul(magnitude, alpha_pow(e * (1 - params.first_root)));
    if (magnitude == 0) {
      return {message_part(received), failure};
    }
    corrected[pos] = static_cast<std::uint8_t>(corrected[pos] ^ magnitude);
    ++changed;
  }

  std::vector<std::uint8_t> recheck;
  if (!compute_syndromes(params, corrected, recheck)) {
    return {message_part(received), failure};
  }
  return {message_part(corrected), {RsStatusKind::Corrected, changed}};
}

std::vector<std::uint8_t> pack_bits(const BitVec& bits) {
  std::vector<std::uint8_t> symbols((bits.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) {
      symbols[i / 8] |= static_cast<std::uint8_t>(1u << (7 - i % 8));
    }
  }
  return symbols;
}

BitVec unpack_bits(const std::vector<std::uint8_t>& symbols) {
  BitVec bits;
  bits.reserve(symbols.size() * 8);
  for (std::uint8_t s : symbols) {
    for (int j = 7; j >= 0; --j) {
      bits.push_back(static_cast<Bit>((s >> j) & 1));
    }
  }
  return bits;
}

}  // namespace ntcfec
