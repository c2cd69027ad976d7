#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "umbpsim/config.hpp"
#include "umbpsim/trace.hpp"

namespace umbpsim {

// Exit codes: 0 success, 1 I/O failure, 2 usage/config error.

int cmd_gen(const PatternSpec& spec, const std::string& out_path,
            std::ostream& msg, std::ostream& err);

int cmd_run(const RunConfig& cfg, std::ostream& msg, std::ostream& err);

// Runs each prefetcher on the same trace; coverage is computed against a
// skeleton run (executed implicitly when not requested).
int cmd_compare(const RunConfig& cfg, const std::vector<std::string>& prefetchers,
                std::ostream& msg, std::ostream& err);

// One CSV row per valid grid combination (d_low <= d_std <= d_high),
// lexicographic over the sorted axes.
int cmd_sweep(const RunConfig& cfg, const SweepGrid& grid, std::ostream& msg,
              std::ostream& err);

}  // namespace umbpsim
