#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "zsp/types.hpp"

namespace zsp {

// Signal files are UTF-8 CSV with the header `t,re_q,im_q` and one node per
// row. Lines starting with '#' are comments. The time column must be uniform
// (within 1e-9 relative to L), symmetric about zero and have an odd count.

SampledPotential parse_signal(std::istream& in, int sigma = 1);
SampledPotential load_signal(const std::filesystem::path& path, int sigma = 1);

/// Writes the potential in the signal format using shortest round-trip
/// formatting, so parse_signal(write_signal(p)) reproduces p bitwise.
void write_signal(std::ostream& out, const SampledPotential& potential);

/// Shortest representation that parses back to the same double.
std::string format_double(double x);

}  // namespace zsp
