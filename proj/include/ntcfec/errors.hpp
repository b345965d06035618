#pragma once

#include <stdexcept>

namespace ntcfec {

// Malformed file contents or mis-framed streams (CLI exit code 3).
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Filesystem-level failures (CLI exit code 2).
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ntcfec
