#include "umbpsim/metrics.hpp"

#include <cstdio>

#include "umbpsim/errors.hpp"

namespace umbpsim {

namespace {

constexpr uint64_t kFnvOffset = 0xcbf29ce484222325ull;
constexpr uint64_t kFnvPrime = 0x100000001b3ull;

void fnv(uint64_t& h, uint64_t v) {
  for (unsigned i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xff;
    h *= kFnvPrime;
  }
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

RunSummary summarize(const SimStats& stats, const std::string& name,
                     uint64_t digest) {
  RunSummary s;
  s.name = name;
  s.digest = digest;
  s.stats = stats;
  s.ipc = stats.cycles == 0 ? 0.0
                            : static_cast<double>(stats.instructions) / stats.cycles;
  const LevelCounters& l2 = stats.levels[1];
  const LevelCounters& l3 = stats.levels[2];
  s.l2_miss_rate =
      l2.accesses == 0 ? 0.0 : static_cast<double>(l2.misses) / l2.accesses;
  s.l3_miss_rate =
      l3.accesses == 0 ? 0.0 : static_cast<double>(l3.misses) / l3.accesses;
  s.accuracy = stats.prefetches_issued == 0
                   ? 0.0
                   : static_cast<double>(stats.prefetches_useful) /
                         stats.prefetches_issued;
  return s;
}

double coverage(const RunSummary& run, const RunSummary& baseline) {
  if (run.digest != baseline.digest)
    throw ComparabilityError("coverage: runs use different trace/configuration");
  const uint64_t base_misses = baseline.stats.levels[1].misses;
  if (base_misses == 0) return 0.0;
  const double run_misses = static_cast<double>(run.stats.levels[1].misses);
  return (static_cast<double>(base_misses) - run_misses) /
         static_cast<double>(base_misses);
}

std::string to_csv(const std::vector<RunSummary>& summaries) {
  std::string out =
      "name,instructions,cycles,ipc,l1_misses,l2_misses,l3_misses,issued,useful,"
      "accuracy,coverage\n";
  for (const RunSummary& s : summaries) {
    out += s.name;
    out += ',' + std::to_string(s.stats.instructions);
    out += ',' + std::to_string(s.stats.cycles);
    out += ',' + fixed6(s.ipc);
    out += ',' + std::to_string(s.stats.levels[0].misses);
    out += ',' + std::to_string(s.stats.levels[1].misses);
    out += ',' + std::to_string(s.stats.levels[2].misses);
    out += ',' + std::to_string(s.stats.prefetches_issued);
    out += ',' + std::to_string(s.stats.prefetches_useful);
    out += ',' + fixed6(s.accuracy);
    out += ',' + fixed6(s.coverage);
    out += '\n';
  }
  return out;
}

uint64_t run_digest(const Trace& trace, const HierarchyConfig& hier,
                    const EngineConfig& engine) {
  uint64_t h = kFnvOffset;
  for (const TraceRecord& rec : trace) {
    fnv(h, rec.ip);
    fnv(h, rec.addr);
    fnv(h, static_cast<uint64_t>(rec.kind));
    fnv(h, rec.gap);
  }
  for (const LevelConfig* lvl : {&hier.l1, &hier.l2, &hier.l3}) {
    fnv(h, lvl->size_bytes);
    fnv(h, lvl->ways);
    fnv(h, lvl->latency_cycles);
  }
  fnv(h, hier.memory_latency_cycles);
  fnv(h, engine.issue_width);
  fnv(h, engine.occupancy_window);
  fnv(h, engine.occupancy_threshold);
  fnv(h, engine.max_candidates_per_access);
  return h;
}

}  // namespace umbpsim
