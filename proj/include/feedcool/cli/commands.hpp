#pragma once

#include <ostream>
#include <string>

#include "feedcool/cli/config.hpp"
#include "feedcool/cli/output.hpp"
#include "feedcool/selfcheck.hpp"

namespace feedcool::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int config = 1;
inline constexpr int instability = 2;
inline constexpr int selfcheck = 3;
}  // namespace exit_code

// Tables behind each command; pure functions of the configuration.
Table occupancy_table(const RunConfig& cfg);
Table sweep_table(const RunConfig& cfg);
Table spectra_table(const RunConfig& cfg);
Table optimize_table(const RunConfig& cfg);

void print_selfcheck(const std::vector<CheckResult>& results, std::ostream& out);

// Full command-line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace feedcool::cli
