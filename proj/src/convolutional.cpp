#include "ntcfec/convolutional.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

#include "ntcfec/errors.hpp"

namespace ntcfec {
namespace {

constexpr int kMinConstraint = 2;
constexpr int kMaxConstraint = 16;

// Tap masks index the register as (current input, s1, ..., sm) from the top
// bit down; polynomials in the delay operator D want coefficient a_i for tap
// i. Reversing the v bits converts one to the other.
std::uint32_t mask_to_poly(std::uint32_t mask, int v) {
  std::uint32_t poly = 0;
  for (int i = 0; i < v; ++i) {
    if (mask & (1u << (v - 1 - i))) {
      poly |= 1u << i;
    }
  }
  return poly;
}

int poly_degree(std::uint32_t p) {
  return p == 0 ? -1 : std::bit_width(p) - 1;
}

std::uint32_t poly_mod(std::uint32_t a, std::uint32_t b) {
  const int db = poly_degree(b);
  while (poly_degree(a) >= db) {
    a ^= b << (poly_degree(a) - db);
  }
  return a;
}

std::uint32_t poly_gcd(std::uint32_t a, std::uint32_t b) {
  while (b != 0) {
    const std::uint32_t r = poly_mod(a, b);
    a = b;
    b = r;
  }
  return a;
}

}  // namespace

const char* to_string(LockMode mode) {
  switch (mode) {
    case LockMode::Lower:
      return "lower";
    case LockMode::Higher:
      return "higher";
    default:
      return "none";
  }
}

void CodeSpec::validate() const {
  if (constraint_length < kMinConstraint || constraint_length > kMaxConstraint) {
    std::ostringstream msg;
    msg << "CodeSpec: constraint length " << constraint_length
        << " outside [" << kMinConstraint << ", " << kMaxConstraint << "]";
    throw std::invalid_argument(msg.str());
  }
  if (generators.size() < 2) {
    throw std::invalid_argument("CodeSpec: need at least two generators");
  }
  if (generators.size() > 8) {
    throw std::invalid_argument("CodeSpec: more than 8 generators unsupported");
  }
  const std::uint32_t limit = 1u << constraint_length;
  for (std::uint32_t g : generators) {
    if (g == 0) {
      throw std::invalid_argument("CodeSpec: zero generator mask");
    }
    if (g >= limit) {
      std::ostringstream msg;
      msg << "CodeSpec: generator mask 0" << std::oct << g << std::dec
          << " does not fit in " << constraint_length << " bits";
      throw std::invalid_argument(msg.str());
    }
  }
}

bool CodeSpec::catastrophic() const {
  std::uint32_t g = 0;
  for (std::uint32_t mask : generators) {
    g = poly_gcd(g, mask_to_poly(mask, constraint_length));
  }
  while (g != 0 && (g & 1u) == 0) {
    g >>= 1;  // a shared power of D is mere delay
  }
  return g != 1;
}

Trellis build_trellis(const CodeSpec& spec, LockMode lock_mode) {
  spec.validate();
  Trellis trellis;
  trellis.spec = spec;
  trellis.lock_mode = lock_mode;
  const int m = spec.memory();
  trellis.state_count = 1 << m;
  trellis.transitions.resize(trellis.state_count);
  for (int state = 0; state < trellis.state_count; ++state) {
    for (int input = 0; input < 2; ++input) {
      const std::uint32_t reg =
          (static_cast<std::uint32_t>(input) << m) |
          static_cast<std::uint32_t>(state);
      std::uint8_t out = 0;
      for (std::size_t i = 0; i < spec.generators.size(); ++i) {
        const int parity = std::popcount(reg & spec.generators[i]) & 1;
        out |= static_cast<std::uint8_t>(parity << i);
      }
      Transition& tr = trellis.transitions[state][input];
      tr.next = static_cast<std::uint16_t>((input << (m - 1)) | (state >> 1));
      tr.output = out;
    }
  }
  if (lock_mode == LockMode::Lower) {
    trellis.excluded_state = trellis.state_count - 1;
    trellis.excluded_from_step = 0;
  } else if (lock_mode == LockMode::Higher) {
    trellis.excluded_state = 0;
    trellis.excluded_from_step = 2;
  }
  return trellis;
}

BitVec conv_encode(const CodeSpec& spec, const BitVec& input_bits) {
  spec.validate();
  const int m = spec.memory();
  const int n = spec.output_bits();
  BitVec out;
  out.reserve(input_bits.size() * n);
  std::uint32_t state = 0;
  for (Bit x : input_bits) {
    const std::uint32_t reg = (static_cast<std::uint32_t>(x & 1) << m) | state;
    for (int i = 0; i < n; ++i) {
      out.push_back(static_cast<Bit>(std::popcount(reg & spec.generators[i]) & 1));
    }
    state = (static_cast<std::uint32_t>(x & 1) << (m - 1)) | (state >> 1);
  }
  return out;
}

BitVec lock_insert(const BitVec& data_bits, LockMode mode) {
  if (mode == LockMode::Unlocked) {
    return data_bits;
  }
  const Bit lock = mode == LockMode::Higher ? 1 : 0;
  BitVec out;
  out.reserve(data_bits.size() * 3);
  for (Bit d : data_bits) {
    out.push_back(d);
    out.push_back(lock);
    out.push_back(lock);
  }
  return out;
}

BitVec lock_strip(const BitVec& locked_bits, LockMode mode) {
  if (mode == LockMode::Unlocked) {
    return locked_bits;
  }
  if (locked_bits.size() % 3 != 0) {
    throw FormatError("lock_strip: length not divisible by 3");
  }
  BitVec out;
  out.reserve(locked_bits.size() / 3);
  for (std::size_t i = 0; i < locked_bits.size(); i += 3) {
    out.push_back(locked_bits[i]);
  }
  return out;
}

}  // namespace ntcfec
