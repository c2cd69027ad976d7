#pragma once

#include <cstdint>
#include <deque>
#include <vector>

#include "umbpsim/cache.hpp"
#include "umbpsim/prefetcher.hpp"
#include "umbpsim/trace.hpp"

namespace umbpsim {

struct EngineConfig {
  unsigned issue_width = 6;
  // Occupancy proxy: prefetches issued within the last occupancy_window
  // demand accesses (including the current one). At or above the
  // threshold, prefetches fill the LLC instead of L2.
  unsigned occupancy_window = 4;
  unsigned occupancy_threshold = 12;
  unsigned max_candidates_per_access = 16;
};

void validate(const EngineConfig& cfg);  // throws ConfigError

struct SimStats {
  uint64_t instructions = 0;
  uint64_t cycles = 0;
  LevelCounters levels[3];  // [0]=L1 [1]=L2 [2]=L3
  uint64_t prefetches_issued = 0;
  uint64_t prefetches_filled = 0;
  uint64_t prefetches_useful = 0;
  uint64_t prefetch_fills_l2 = 0;
  uint64_t prefetch_fills_l3 = 0;
};

// Sliding count of prefetches issued over the most recent demand accesses.
class PrefetchWindow {
 public:
  explicit PrefetchWindow(unsigned window) : window_(window) {}
  void begin_access();
  void record_issue();
  uint64_t issued_in_window() const { return sum_; }

 private:
  unsigned window_;
  uint64_t sum_ = 0;
  std::deque<uint64_t> per_access_;
};

bool l1_filter(const AccessOutcome& outcome);  // true iff the access reached L2

// Issues candidates (nearest-first) through the occupancy rule. Skipped
// candidates (already resident at the would-be fill level or deeper, or
// negative) are not counted as issued.
unsigned issue_prefetches(const std::vector<int64_t>& candidates, Hierarchy& hier,
                          PrefetchWindow& window, const EngineConfig& cfg,
                          SimStats& stats);

SimStats run(const Trace& trace, Prefetcher& prefetcher,
             const HierarchyConfig& hier_cfg, const EngineConfig& engine_cfg);

}  // namespace umbpsim
