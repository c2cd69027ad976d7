#include "umbpsim/engine.hpp"

#include "umbpsim/errors.hpp"

namespace umbpsim {

void validate(const EngineConfig& cfg) {
  if (cfg.issue_width == 0 || cfg.occupancy_window == 0 ||
      cfg.occupancy_threshold == 0 || cfg.max_candidates_per_access == 0)
    throw ConfigError("engine parameters must be strictly positive");
}

void PrefetchWindow::begin_access() {
  per_access_.push_back(0);
  while (per_access_.size() > window_) {
    sum_ -= per_access_.front();
    per_access_.pop_front();
  }
}

void PrefetchWindow::record_issue() {
  if (per_access_.empty()) per_access_.push_back(0);
  ++per_access_.back();
  ++sum_;
}

bool l1_filter(const AccessOutcome& outcome) {
  return outcome.hit_level != CacheLevelId::L1;
}

unsigned issue_prefetches(const std::vector<int64_t>& candidates, Hierarchy& hier,
                          PrefetchWindow& window, const EngineConfig& cfg,
                          SimStats& stats) {
  unsigned issued = 0;
  std::size_t considered = 0;
  for (int64_t cand : candidates) {
    if (considered++ >= cfg.max_candidates_per_access) break;
    if (cand < 0) continue;
    const uint64_t line = static_cast<uint64_t>(cand);
    const FillLevel level = window.issued_in_window() < cfg.occupancy_threshold
                                ? FillLevel::L2
                                : FillLevel::L3;
    if (!hier.prefetch_fill(line, level)) continue;  // already resident: skip
    ++issued;
    window.record_issue();
    ++stats.prefetches_issued;
    ++stats.prefetches_filled;
    if (level == FillLevel::L2)
      ++stats.prefetch_fills_l2;
    else
      ++stats.prefetch_fills_l3;
  }
  return issued;
}

SimStats run(const Trace& trace, Prefetcher& prefetcher,
             const HierarchyConfig& hier_cfg, const EngineConfig& engine_cfg) {
  validate(engine_cfg);
  Hierarchy hier(hier_cfg);
  PrefetchWindow window(engine_cfg.occupancy_window);
  SimStats stats;

  for (const TraceRecord& rec : trace) {
    window.begin_access();
    const uint64_t front_end = rec.gap + 1ull;
    stats.instructions += front_end;
    stats.cycles += (front_end + engine_cfg.issue_width - 1) / engine_cfg.issue_width;

    const AccessOutcome outcome = hier.demand_access(rec.addr, rec.kind);
    stats.cycles += outcome.latency_cycles;
    if (outcome.consumed_prefetch) ++stats.prefetches_useful;

    if (l1_filter(outcome)) {
      const auto candidates =
          prefetcher.observe(rec.ip, line_of(rec.addr), outcome.l2_hit);
      issue_prefetches(candidates, hier, window, engine_cfg, stats);
    }
  }

  for (int lvl = 0; lvl < 3; ++lvl)
    stats.levels[lvl] = hier.counters(static_cast<CacheLevelId>(lvl));
  return stats;
}

}  // namespace umbpsim
