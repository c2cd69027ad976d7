#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "umbpsim/trace.hpp"

namespace umbpsim {

struct LevelConfig {
  uint64_t size_bytes = 0;
  unsigned ways = 0;
  unsigned latency_cycles = 0;
};

struct HierarchyConfig {
  LevelConfig l1{16 * 1024, 8, 4};
  LevelConfig l2{128 * 1024, 8, 10};
  LevelConfig l3{2 * 1024 * 1024, 16, 20};
  // Memory latency is an assumption; the cache latencies are configured,
  // memory is not, so 200 cycles is the documented default.
  unsigned memory_latency_cycles = 200;
};

enum class CacheLevelId : int { L1 = 0, L2 = 1, L3 = 2, MEM = 3 };
enum class FillLevel : int { L2 = 1, L3 = 2 };

struct AccessOutcome {
  CacheLevelId hit_level = CacheLevelId::MEM;
  unsigned latency_cycles = 0;
  bool l2_hit = false;
  bool consumed_prefetch = false;  // satisfying line had its prefetched flag set
};

struct LevelCounters {
  uint64_t accesses = 0;
  uint64_t hits = 0;
  uint64_t misses = 0;
  uint64_t evictions = 0;
  uint64_t back_invalidations = 0;
};

struct Geometry {
  uint64_t sets = 0;
  unsigned ways = 0;
};

// sets = size/(ways*64); throws ConfigError unless the set count is a
// nonzero power of two.
Geometry geometry(const LevelConfig& cfg);

struct LineState {
  uint64_t tag = 0;
  bool valid = false;
  bool prefetched = false;
  unsigned lru_age = 0;  // 0 = most recently used within the set
};

class CacheLevel {
 public:
  explicit CacheLevel(const LevelConfig& cfg);

  bool present(uint64_t line) const;
  LineState* find(uint64_t line);
  const LineState* find(uint64_t line) const;
  void touch(uint64_t line);  // move to MRU
  // Inserts at MRU; returns true and the victim line when a valid line
  // was evicted. The line must not already be present.
  bool fill(uint64_t line, bool prefetched, uint64_t* evicted_line);
  bool invalidate(uint64_t line);
  std::vector<uint64_t> resident_lines() const;

  uint64_t sets() const { return sets_; }
  unsigned ways() const { return ways_; }
  unsigned latency() const { return latency_; }
  LevelCounters counters;

 private:
  uint64_t index_of(uint64_t line) const { return line & (sets_ - 1); }
  uint64_t tag_of(uint64_t line) const { return line >> set_bits_; }
  LineState* set_base(uint64_t line);
  const LineState* set_base(uint64_t line) const;

  uint64_t sets_;
  unsigned ways_;
  unsigned latency_;
  unsigned set_bits_;
  std::vector<LineState> lines_;
};

// Three-level inclusive hierarchy with LRU replacement. Evicting a line
// at a lower level invalidates it from every level above.
class Hierarchy {
 public:
  explicit Hierarchy(const HierarchyConfig& cfg);

  AccessOutcome demand_access(uint64_t addr, AccessKind kind);
  bool prefetch_fill(uint64_t line, FillLevel level);

  bool present(uint64_t line, CacheLevelId level) const;
  const LevelCounters& counters(CacheLevelId level) const;
  const HierarchyConfig& config() const { return cfg_; }
  bool check_inclusive() const;  // test hook

 private:
  void fill_with_backinval(int level, uint64_t line, bool prefetched);

  HierarchyConfig cfg_;
  std::vector<CacheLevel> levels_;  // [0]=L1 [1]=L2 [2]=L3
};

}  // namespace umbpsim
