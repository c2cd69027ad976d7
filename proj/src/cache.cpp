#include "umbpsim/cache.hpp"

#include <bit>

#include "umbpsim/errors.hpp"

namespace umbpsim {

Geometry geometry(const LevelConfig& cfg) {
  if (cfg.ways == 0 || cfg.size_bytes == 0)
    throw ConfigError("cache level needs nonzero size and ways");
  const uint64_t way_bytes = static_cast<uint64_t>(cfg.ways) * kLineBytes;
  if (cfg.size_bytes % way_bytes != 0)
    throw ConfigError("cache size not divisible by ways*line_bytes");
  const uint64_t sets = cfg.size_bytes / way_bytes;
  if (!std::has_single_bit(sets))
    throw ConfigError("cache set count must be a power of two");
  return {sets, cfg.ways};
}

CacheLevel::CacheLevel(const LevelConfig& cfg) : latency_(cfg.latency_cycles) {
  const Geometry geo = geometry(cfg);
  sets_ = geo.sets;
  ways_ = geo.ways;
  set_bits_ = static_cast<unsigned>(std::countr_zero(sets_));
  lines_.resize(sets_ * ways_);
}

LineState* CacheLevel::set_base(uint64_t line) {
  return lines_.data() + index_of(line) * ways_;
}

const LineState* CacheLevel::set_base(uint64_t line) const {
  return lines_.data() + index_of(line) * ways_;
}

LineState* CacheLevel::find(uint64_t line) {
  LineState* set = set_base(line);
  const uint64_t tag = tag_of(line);
  for (unsigned w = 0; w < ways_; ++w)
    if (set[w].valid && set[w].tag == tag) return &set[w];
  return nullptr;
}

const LineState* CacheLevel::find(uint64_t line) const {
  return const_cast<CacheLevel*>(this)->find(line);
}

bool CacheLevel::present(uint64_t line) const { return find(line) != nullptr; }

void CacheLevel::touch(uint64_t line) {
  LineState* set = set_base(line);
  LineState* hit = find(line);
  if (!hit) return;
  const unsigned old_age = hit->lru_age;
  for (unsigned w = 0; w < ways_; ++w)
    if (set[w].valid && set[w].lru_age < old_age) ++set[w].lru_age;
  hit->lru_age = 0;
}

bool CacheLevel::fill(uint64_t line, bool prefetched, uint64_t* evicted_line) {
  LineState* set = set_base(line);
  LineState* victim = nullptr;
  for (unsigned w = 0; w < ways_; ++w) {
    if (!set[w].valid) {
      victim = &set[w];
      break;
    }
  }
  bool evicted = false;
  if (!victim) {
    for (unsigned w = 0; w < ways_; ++w)
      if (!victim || set[w].lru_age > victim->lru_age) victim = &set[w];
    if (evicted_line) {
      // reconstruct the victim's line number from tag and index
      *evicted_line = (victim->tag << set_bits_) | index_of(line);
    }
    evicted = true;
    ++counters.evictions;
  }
  for (unsigned w = 0; w < ways_; ++w)
    if (set[w].valid) ++set[w].lru_age;
  victim->tag = tag_of(line);
  victim->valid = true;
  victim->prefetched = prefetched;
  victim->lru_age = 0;
  return evicted;
}

std::vector<uint64_t> CacheLevel::resident_lines() const {
  std::vector<uint64_t> out;
  for (uint64_t set = 0; set < sets_; ++set) {
    for (unsigned w = 0; w < ways_; ++w) {
      const LineState& s = lines_[set * ways_ + w];
      if (s.valid) out.push_back((s.tag << set_bits_) | set);
    }
  }
  return out;
}

bool CacheLevel::invalidate(uint64_t line) {
  LineState* hit = find(line);
  if (!hit) return false;
  hit->valid = false;
  hit->prefetched = false;
  return true;
}

Hierarchy::Hierarchy(const HierarchyConfig& cfg) : cfg_(cfg) {
  if (cfg.l1.size_bytes > cfg.l2.size_bytes || cfg.l2.size_bytes > cfg.l3.size_bytes)
    throw ConfigError("inclusive hierarchy requires l1.size <= l2.size <= l3.size");
  levels_.reserve(3);
  levels_.emplace_back(cfg.l1);
  levels_.emplace_back(cfg.l2);
  levels_.emplace_back(cfg.l3);
}

void Hierarchy::fill_with_backinval(int level, uint64_t line, bool prefetched) {
  uint64_t victim = 0;
  if (levels_[level].fill(line, prefetched, &victim)) {
    // evictions invalidate the line from every level above
    for (int upper = level - 1; upper >= 0; --upper)
      if (levels_[upper].invalidate(victim)) ++levels_[upper].counters.back_invalidations;
  }
}

AccessOutcome Hierarchy::demand_access(uint64_t addr, AccessKind) {
  const uint64_t line = line_of(addr);
  int hit_level = 3;  // 3 = memory
  for (int lvl = 0; lvl < 3; ++lvl) {
    ++levels_[lvl].counters.accesses;
    if (levels_[lvl].present(line)) {
      ++levels_[lvl].counters.hits;
      hit_level = lvl;
      break;
    }
    ++levels_[lvl].counters.misses;
  }

  AccessOutcome outcome;
  bool consumed = false;
  if (hit_level < 3) {
    LineState* state = levels_[hit_level].find(line);
    consumed = state->prefetched;
    levels_[hit_level].touch(line);
    // the prefetched flag is consumed once, at every level holding the line
    for (int lvl = 0; lvl < 3; ++lvl)
      if (LineState* s = levels_[lvl].find(line)) s->prefetched = false;
    for (int lvl = hit_level - 1; lvl >= 0; --lvl)
      fill_with_backinval(lvl, line, false);
    outcome.hit_level = static_cast<CacheLevelId>(hit_level);
    outcome.latency_cycles = levels_[hit_level].latency();
  } else {
    for (int lvl = 2; lvl >= 0; --lvl) fill_with_backinval(lvl, line, false);
    outcome.hit_level = CacheLevelId::MEM;
    outcome.latency_cycles = cfg_.memory_latency_cycles;
  }
  outcome.l2_hit = hit_level == 1;
  outcome.consumed_prefetch = consumed;
  return outcome;
}

bool Hierarchy::prefetch_fill(uint64_t line, FillLevel level) {
  if (level == FillLevel::L3) {
    if (levels_[2].present(line)) return false;
    fill_with_backinval(2, line, true);
    return true;
  }
  // L2 target: no action when already in L2 or anywhere below
  if (levels_[1].present(line) || levels_[2].present(line)) return false;
  fill_with_backinval(2, line, true);
  fill_with_backinval(1, line, true);
  return true;
}

bool Hierarchy::present(uint64_t line, CacheLevelId level) const {
  return levels_[static_cast<int>(level)].present(line);
}

const LevelCounters& Hierarchy::counters(CacheLevelId level) const {
  return levels_[static_cast<int>(level)].counters;
}

bool Hierarchy::check_inclusive() const {
  for (int lvl = 0; lvl < 2; ++lvl) {
    for (uint64_t line : levels_[lvl].resident_lines())
      if (!levels_[lvl + 1].present(line)) return false;
  }
  return true;
}

}  // namespace umbpsim
