#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ntcfec {

// A bit stream; every element is 0 or 1.
using Bit = std::uint8_t;
using BitVec = std::vector<Bit>;

std::string bits_to_string(const BitVec& bits);

}  // namespace ntcfec
