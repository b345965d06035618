#include "ntcfec/bits.hpp"

namespace ntcfec {

std::string bits_to_string(const BitVec& bits) {
  std::string s;
  s.reserve(bits.size());
  for (Bit b : bits) {
    s.push_back(b ? '1' : '0');
  }
  return s;
}

}  // namespace ntcfec
