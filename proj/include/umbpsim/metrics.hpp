#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "umbpsim/engine.hpp"

namespace umbpsim {

struct RunSummary {
  std::string name;
  uint64_t digest = 0;  // trace + configuration fingerprint
  SimStats stats;
  double ipc = 0.0;
  double l2_miss_rate = 0.0;
  double l3_miss_rate = 0.0;
  double accuracy = 0.0;  // useful / issued, 0 when none issued
  double coverage = 0.0;  // vs. a named baseline run, when computed
};

RunSummary summarize(const SimStats& stats, const std::string& name,
                     uint64_t digest = 0);

// Fraction of baseline L2 misses eliminated; negative when the run
// pollutes. Throws ComparabilityError on digest mismatch.
double coverage(const RunSummary& run, const RunSummary& baseline);

// Stable schema: name,instructions,cycles,ipc,l1_misses,l2_misses,
// l3_misses,issued,useful,accuracy,coverage. Decimals carry 6 fractional
// digits; byte-identical for identical inputs.
std::string to_csv(const std::vector<RunSummary>& summaries);

uint64_t run_digest(const Trace& trace, const HierarchyConfig& hier,
                    const EngineConfig& engine);

}  // namespace umbpsim
