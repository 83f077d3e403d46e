#pragma once

// Command-line front end. `run` takes the arguments after the program name
// and returns the process exit code:
//
//   0  success
//   1  usage error (bad flag, bad range, unwritable --out path)
//   2  a run finished but did not converge or a check failed

#include <ostream>
#include <string>
#include <vector>

namespace gaugequad::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFailed = 2;

/// Environment variable read for the default --seed.
inline constexpr const char* kSeedEnv = "GAUGEQUAD_SEED";

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// %.17g; round-trips every finite double.
std::string format_double(double v);

}  // namespace gaugequad::cli
