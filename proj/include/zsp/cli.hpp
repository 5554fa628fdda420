#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "zsp/types.hpp"

namespace zsp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs `sweep | order | eigen | parseval` with the given arguments (program
/// name excluded). CSV and reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "0.5i", "i", "-2i", "1.5", "0.3-0.2i", "1+i".
Complex parse_complex(std::string_view text);

}  // namespace zsp::cli
