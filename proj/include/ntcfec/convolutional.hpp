#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ntcfec/bits.hpp"

namespace ntcfec {

// Lower inserts the pair (0,0) after every data bit before encoding, Higher
// inserts (1,1). The known bits pin down the register contents between data
// bits and make one trellis state unreachable.
enum class LockMode { Unlocked, Lower, Higher };

const char* to_string(LockMode mode);

// Binary rate-1/n convolutional code. constraint_length v counts the current
// input plus m = v-1 memory cells. Each generator is a v-bit tap mask whose
// most significant bit taps the current input, descending through the memory
// cells from newest to oldest, so the conventional octal constants read
// naturally: (7,5) octal = 111,101.
struct CodeSpec {
  int constraint_length = 3;
  std::vector<std::uint32_t> generators{07, 05};

  int memory() const { return constraint_length - 1; }
  int output_bits() const { return static_cast<int>(generators.size()); }
  double rate() const { return 1.0 / output_bits(); }

  // True when the generators share a nontrivial common factor over GF(2)
  // (a common power of D does not count).
  bool catastrophic() const;

  void validate() const;
};

struct Transition {
  std::uint16_t next = 0;
  std::uint8_t output = 0;  // bit i = output of generator i
};

// Expanded state machine of a code. States pack the memory cells with the
// most recent input in the top bit, so state after input x is
// (x << (m-1)) | (state >> 1).
struct Trellis {
  CodeSpec spec;
  LockMode lock_mode = LockMode::Unlocked;
  int state_count = 0;
  std::vector<std::array<Transition, 2>> transitions;

  // Lock pruning. Lower makes the all-ones state unreachable at every step;
  // Higher makes the all-zero state unreachable from step 2 onward (it still
  // hosts the start of the path).
  int excluded_state = -1;
  std::size_t excluded_from_step = 0;

  bool excluded_at(int state, std::size_t step) const {
    return state == excluded_state && step >= excluded_from_step;
  }
};

Trellis build_trellis(const CodeSpec& spec,
                      LockMode lock_mode = LockMode::Unlocked);

// Feeds input_bits through the shift register starting from the all-zero
// state. Output length = output_bits() * input length.
BitVec conv_encode(const CodeSpec& spec, const BitVec& input_bits);

// Unlocked is the identity; Lower maps each data bit d to (d,0,0), Higher to
// (d,1,1).
BitVec lock_insert(const BitVec& data_bits, LockMode mode);

// Inverse of lock_insert: keeps positions 0, 3, 6, ... For locked modes the
// input length must be divisible by 3 (FormatError otherwise).
BitVec lock_strip(const BitVec& locked_bits, LockMode mode);

}  // namespace ntcfec
