// The concswap command line, callable in-process.

#pragma once

#include <iosfwd>
#include <string_view>

#include "concswap/linalg.hpp"

namespace concswap {

inline constexpr std::string_view kToolVersion = "0.1.0";

/// Exit codes: 0 success, 1 usage or parse error, 2 numerical or
/// verification failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// "re", "re+imi", "re-imi" or "imi". Throws std::invalid_argument.
Complex parse_complex(std::string_view text);

}  // namespace concswap
