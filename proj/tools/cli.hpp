#pragma once

// Command-line front end. Exit codes: 0 when every executed check passes,
// 1 when any check fails, 2 on usage or precondition errors.

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

namespace kfsusy::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

int run(int argc, char** argv, std::ostream& out, std::ostream& err);
/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "all" -> 2..6, otherwise a single integer in [2, 12].
std::vector<int> parse_k(const std::string& text);
/// "re,im" (or a bare real part).
std::complex<double> parse_complex(const std::string& text);
/// Comma separated reals.
std::vector<double> parse_list(const std::string& text);

}  // namespace kfsusy::cli
