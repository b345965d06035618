#include <algorithm>
#include <doctest.h>

#include "ntcfec/reed_solomon.hpp"
#include "ntcfec/rng.hpp"

using namespace ntcfec;

namespace {

using Symbols = std::vector<std::uint8_t>;

Symbols random_symbols(RngStream& rng, std::size_t n) {
  Symbols out(n);
  for (auto& s : out) {
    s = static_cast<std::uint8_t>(rng.next_u64() & 0xFF);
  }
  return out;
}

// Test-only reference: school-book polynomial long division of
// msg * x^(n-k) by the generator polynomial, descending coefficients.
Symbols long_division_parity(const RsParams& params, const Symbols& msg) {
  // Build the generator by explicit convolution.
  Symbols gen{1};
  for (int i = 0; i < params.parity(); ++i) {
    const std::uint8_t root = gf256::alpha_pow(params.first_root + i);
    Symbols next(gen.size() + 1, 0);
    for (std::size_t j = 0; j < gen.size(); ++j) {
      next[j] ^= gen[j];
      next[j + 1] ^= gf256::mul(gen[j], root);
    }
    gen = next;
  }
  Symbols dividend = msg;
  dividend.resize(msg.size() + params.parity(), 0);
  for (std::size_t i = 0; i + gen.size() <= dividend.size() + 0; ++i) {
    const std::uint8_t coef = dividend[i];
    if (coef == 0) {
      continue;
    }
    for (std::size_t j = 0; j < gen.size(); ++j) {
      dividend[i + j] ^= gf256::mul(coef, gen[j]);
    }
  }
  return Symbols(dividend.end() - params.parity(), dividend.end());
}

Symbols syndromes_of(const RsParams& params, const Symbols& word) {
  Symbols syn(params.parity());
  for (int j = 0; j < params.parity(); ++j) {
    const std::uint8_t point = gf256::alpha_pow(params.first_root + j);
    std::uint8_t acc = 0;
    for (std::uint8_t s : word) {
      acc = static_cast<std::uint8_t>(gf256::mul(acc, point) ^ s);
    }
    syn[j] = acc;
  }
  return syn;
}

}  // namespace

TEST_CASE("gf256 basics") {
  for (int a = 0; a < 256; ++a) {
    CHECK(gf256::mul(0, static_cast<std::uint8_t>(a)) == 0);
  }
  CHECK(gf256::mul(2, 2) == 4);
  CHECK(gf256::pow(2, 8) == 0x1D);
  CHECK_THROWS_AS(gf256::inv(0), std::invalid_argument);
}

TEST_CASE("gf256 inverse is exhaustive") {
  for (int a = 1; a < 256; ++a) {
    const auto value = static_cast<std::uint8_t>(a);
    CHECK(gf256::mul(value, gf256::inv(value)) == 1);
  }
}

TEST_CASE("gf256 field axioms on random triples") {
  RngStream rng = derive_stream(67, {});
  for (int trial = 0; trial < 100000; ++trial) {
    const auto a = static_cast<std::uint8_t>(rng.next_u64());
    const auto b = static_cast<std::uint8_t>(rng.next_u64());
    const auto c = static_cast<std::uint8_t>(rng.next_u64());
    CHECK(gf256::mul(a, b) == gf256::mul(b, a));
    CHECK(gf256::mul(a, gf256::mul(b, c)) == gf256::mul(gf256::mul(a, b), c));
    CHECK(gf256::mul(a, gf256::add(b, c)) ==
          gf256::add(gf256::mul(a, b), gf256::mul(a, c)));
  }
}

TEST_CASE("systematic encode with zero syndromes") {
  const RsParams rs255{255, 223};
  const RsParams rs15{15, 11};
  RngStream rng = derive_stream(71, {});
  for (const RsParams& params : {rs255, rs15}) {
    for (int trial = 0; trial < 20; ++trial) {
      const Symbols msg = random_symbols(rng, params.k);
      const Symbols codeword = rs_encode(params, msg);
      REQUIRE(static_cast<int>(codeword.size()) == params.n);
      CHECK(Symbols(codeword.begin(), codeword.begin() + params.k) == msg);
      const Symbols syn = syndromes_of(params, codeword);
      CHECK(std::all_of(syn.begin(), syn.end(),
                        [](std::uint8_t s) { return s == 0; }));
    }
  }
  CHECK(rs_encode(rs15, Symbols(11, 0)) == Symbols(15, 0));
}

TEST_CASE("encode parity matches a long-division reference") {
  const RsParams params{15, 11};
  const Symbols msg{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
  const Symbols codeword = rs_encode(params, msg);
  const Symbols parity(codeword.begin() + params.k, codeword.end());
  CHECK(parity == long_division_parity(params, msg));
}

TEST_CASE("encoder is linear") {
  const RsParams params{255, 223};
  RngStream rng = derive_stream(73, {});
  for (int trial = 0; trial < 20; ++trial) {
    const Symbols a = random_symbols(rng, params.k);
    const Symbols b = random_symbols(rng, params.k);
    Symbols sum(params.k);
    for (int i = 0; i < params.k; ++i) {
      sum[i] = a[i] ^ b[i];
    }
    const Symbols ca = rs_encode(params, a);
    const Symbols cb = rs_encode(params, b);
    Symbols expected(params.n);
    for (int i = 0; i < params.n; ++i) {
      expected[i] = ca[i] ^ cb[i];
    }
    CHECK(rs_encode(params, sum) == expected);
  }
}

TEST_CASE("decode clean codewords") {
  const RsParams params{255, 223};
  RngStream rng = derive_stream(79, {});
  const Symbols msg = random_symbols(rng, params.k);
  const auto [decoded, status] = rs_decode(params, rs_encode(params, msg));
  CHECK(decoded == msg);
  CHECK(status.kind == RsStatusKind::Clean);
  CHECK(status.corrected == 0);
}

TEST_CASE("corrects up to t random symbol errors") {
  const RsParams params{255, 223};
  RngStream rng = derive_stream(83, {});
  for (int trial = 0; trial < 200; ++trial) {
    const Symbols msg = random_symbols(rng, params.k);
    Symbols word = rs_encode(params, msg);
    const int errors = 1 + static_cast<int>(rng.next_u64() % params.t());
    std::vector<int> positions;
    while (static_cast<int>(positions.size()) < errors) {
      const int pos = static_cast<int>(rng.next_u64() % params.n);
      if (std::find(positions.begin(), positions.end(), pos) ==
          positions.end()) {
        positions.push_back(pos);
      }
    }
    for (int pos : positions) {
      word[pos] ^= static_cast<std::uint8_t>(1 + (rng.next_u64() % 255));
    }
    const auto [decoded, status] = rs_decode(params, word);
    CHECK(decoded == msg);
    CHECK(status.kind == RsStatusKind::Corrected);
    CHECK(status.corrected == errors);
  }
}

TEST_CASE("status soundness: corrected count equals changed positions") {
  const RsParams params{15, 11};
  RngStream rng = derive_stream(89, {});
  for (int trial = 0; trial < 200; ++trial) {
    const Symbols msg = random_symbols(rng, params.k);
    Symbols word = rs_encode(params, msg);
    word[3] ^= 0x5A;
    word[9] ^= 0x11;
    const auto [decoded, status] = rs_decode(params, word);
    REQUIRE(status.kind == RsStatusKind::Corrected);
    CHECK(status.corrected == 2);
    CHECK(decoded == msg);
  }
}

TEST_CASE("beyond t errors: failure or a different valid codeword") {
  const RsParams params{15, 11};
  RngStream rng = derive_stream(97, {});
  int failures = 0;
  int miscorrections = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const Symbols msg = random_symbols(rng, params.k);
    Symbols word = rs_encode(params, msg);
    std::vector<int> positions;
    while (positions.size() < 3) {
      const int pos = static_cast<int>(rng.next_u64() % params.n);
      if (std::find(positions.begin(), positions.end(), pos) ==
          positions.end()) {
        positions.push_back(pos);
      }
    }
    for (int pos : positions) {
      word[pos] ^= static_cast<std::uint8_t>(1 + (rng.next_u64() % 255));
    }
    const auto [decoded, status] = rs_decode(params, word);
    if (status.kind == RsStatusKind::Failure) {
      ++failures;
      // Failure hands back the received message part untouched.
      CHECK(decoded == Symbols(word.begin(), word.begin() + params.k));
    } else {
      // Anything else must at least be a consistent codeword.
      REQUIRE(status.kind == RsStatusKind::Corrected);
      ++miscorrections;
      Symbols recoded = rs_encode(params, decoded);
      const Symbols syn = syndromes_of(params, recoded);
      CHECK(std::all_of(syn.begin(), syn.end(),
                        [](std::uint8_t s) { return s == 0; }));
    }
  }
  CHECK(failures + miscorrections == 500);
  CHECK(failures > 0);
}

TEST_CASE("length validation") {
  const RsParams params{255, 223};
  CHECK_THROWS_AS(rs_encode(params, Symbols(10)), std::invalid_argument);
  CHECK_THROWS_AS(rs_decode(params, Symbols(10)), std::invalid_argument);
  const RsParams odd_parity{255, 222};
  CHECK_THROWS_AS(odd_parity.validate(), std::invalid_argument);
}

TEST_CASE("bit packing") {
  CHECK(pack_bits({1, 0, 1, 0, 1, 0, 1, 0}) == Symbols{0xAA});
  CHECK(pack_bits({}).empty());
  CHECK(unpack_bits({}).empty());

  RngStream rng = derive_stream(101, {});
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = rng.next_u64() % 90;
    BitVec bits(n);
    for (auto& b : bits) {
      b = static_cast<Bit>(rng.next_u64() & 1);
    }
    BitVec restored = unpack_bits(pack_bits(bits));
    restored.resize(n);
    CHECK(restored == bits);
  }
}
