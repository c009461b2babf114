#pragma once

// Signal CSV files:
//
//   # fs=<Hz> t0=<s>
//   re,im
//   ...
//
// The im column is optional and defaults to 0.

#include <filesystem>

#include "mrct/types.hpp"

namespace mrct {

Signal read_signal_csv(const std::filesystem::path& path);
void write_signal_csv(const std::filesystem::path& path, const Signal& signal);

}  // namespace mrct
