#ifndef SHAPEINV_CLI_HPP
#define SHAPEINV_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace shapeinv::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line (without the program name). Output goes to `out`
/// unless --out is given; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// %.17g, or "null" for non-finite values.
std::string format_double(double v);

}  // namespace shapeinv::cli

#endif  // SHAPEINV_CLI_HPP
