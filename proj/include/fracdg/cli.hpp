#pragma once

#include <iosfwd>
#include <string_view>

namespace fracdg {

inline constexpr std::string_view kVersion = "1.0.0";

/// Runs the command-line driver. Returns 0 on success, 2 on a usage or
/// validation error and 1 on a numerical failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fracdg
