#pragma once

// CLI front end, separated from main() so tests can drive it in-process.

#include <iosfwd>
#include <string>
#include <vector>

#include "spb/analysis.hpp"
#include "spb/channel.hpp"

namespace spb::cli {

// Parse a DMC description: first line "K J", then K rows of J transition
// probabilities. Rows must sum to 1 within 1e-6 and are renormalized.
DiscreteChannel load_dmc_file(const std::string& path);

// Entry point used by both main() and the tests. Returns the process
// exit code: 0 success, 2 configuration error, 3 numeric failure.
int run_main(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err);

}  // namespace spb::cli
