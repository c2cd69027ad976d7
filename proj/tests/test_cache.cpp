#include "cache_oracle.hpp"
#include "doctest.h"
#include "umbpsim/cache.hpp"
#include "umbpsim/errors.hpp"
#include "umbpsim/trace.hpp"

using namespace umbpsim;

TEST_CASE("geometry from the configured level sizes") {
  CHECK(geometry({16 * 1024, 8, 4}).sets == 32);
  CHECK(geometry({128 * 1024, 8, 10}).sets == 256);
  CHECK(geometry({2 * 1024 * 1024, 16, 20}).sets == 2048);
  CHECK_THROWS_AS(geometry({96 * 1024, 8, 10}), ConfigError);  // 192 sets
}

TEST_CASE("cold access misses to memory; re-access hits L1") {
  Hierarchy hier{HierarchyConfig{}};
  const AccessOutcome first = hier.demand_access(0x1000, AccessKind::load);
  CHECK(first.hit_level == CacheLevelId::MEM);
  CHECK(first.latency_cycles == 200);
  CHECK_FALSE(first.consumed_prefetch);

  const AccessOutcome second = hier.demand_access(0x1000, AccessKind::load);
  CHECK(second.hit_level == CacheLevelId::L1);
  CHECK(second.latency_cycles == 4);
}

TEST_CASE("prefetch fill levels and the consumed flag") {
  Hierarchy hier{HierarchyConfig{}};
  const uint64_t line = 0x40;

  SUBCASE("L3 fill lands only in L3") {
    CHECK(hier.prefetch_fill(line, FillLevel::L3));
    CHECK(hier.present(line, CacheLevelId::L3));
    CHECK_FALSE(hier.present(line, CacheLevelId::L2));
    CHECK_FALSE(hier.present(line, CacheLevelId::L1));
  }

  SUBCASE("L2 fill is inclusive of L3 and is deduplicated") {
    CHECK(hier.prefetch_fill(line, FillLevel::L2));
    CHECK(hier.present(line, CacheLevelId::L2));
    CHECK(hier.present(line, CacheLevelId::L3));
    CHECK_FALSE(hier.prefetch_fill(line, FillLevel::L2));
    CHECK_FALSE(hier.prefetch_fill(line, FillLevel::L3));
  }

  SUBCASE("a resident L3 line blocks an L2-target fill") {
    CHECK(hier.prefetch_fill(line, FillLevel::L3));
    CHECK_FALSE(hier.prefetch_fill(line, FillLevel::L2));
    CHECK_FALSE(hier.present(line, CacheLevelId::L2));
  }

  SUBCASE("demand on a prefetched line consumes the flag once") {
    hier.prefetch_fill(line, FillLevel::L2);
    const AccessOutcome hit = hier.demand_access(line << 6, AccessKind::load);
    CHECK(hit.hit_level == CacheLevelId::L2);
    CHECK(hit.latency_cycles == 10);
    CHECK(hit.consumed_prefetch);
    const AccessOutcome again = hier.demand_access(line << 6, AccessKind::load);
    CHECK_FALSE(again.consumed_prefetch);
  }
}

TEST_CASE("LRU eviction: k+1 lines through a k-way set evict the first") {
  HierarchyConfig cfg;
  Hierarchy hier(cfg);
  const Geometry l1 = geometry(cfg.l1);
  // lines mapping to L1 set 0: multiples of l1.sets
  for (unsigned i = 0; i <= l1.ways; ++i)
    hier.demand_access((static_cast<uint64_t>(i) * l1.sets) << 6, AccessKind::load);
  CHECK_FALSE(hier.present(0, CacheLevelId::L1));  // first-filled evicted
  for (unsigned i = 1; i <= l1.ways; ++i)
    CHECK(hier.present(static_cast<uint64_t>(i) * l1.sets, CacheLevelId::L1));
}

TEST_CASE("snapshot counters: cold state and a single miss") {
  Hierarchy hier{HierarchyConfig{}};
  for (int lvl = 0; lvl < 3; ++lvl) {
    const LevelCounters& c = hier.counters(static_cast<CacheLevelId>(lvl));
    CHECK(c.accesses == 0);
    CHECK(c.hits == 0);
    CHECK(c.misses == 0);
  }
  hier.demand_access(0, AccessKind::load);
  for (int lvl = 0; lvl < 3; ++lvl) {
    const LevelCounters& c = hier.counters(static_cast<CacheLevelId>(lvl));
    CHECK(c.accesses == 1);
    CHECK(c.misses == 1);
    CHECK(c.hits == 0);
  }
}

TEST_CASE("inclusivity holds under pressure, with back-invalidation") {
  // tiny hierarchy so evictions happen quickly
  HierarchyConfig cfg;
  cfg.l1 = {2 * 1024, 2, 4};
  cfg.l2 = {4 * 1024, 2, 10};
  cfg.l3 = {8 * 1024, 2, 20};
  Hierarchy hier(cfg);
  uint64_t rng = 5;
  for (int i = 0; i < 2000; ++i) {
    const uint64_t line = splitmix64(rng) % 512;
    if (splitmix64(rng) % 4 == 0)
      hier.prefetch_fill(line, splitmix64(rng) % 2 ? FillLevel::L2 : FillLevel::L3);
    else
      hier.demand_access(line << 6, AccessKind::load);
    REQUIRE(hier.check_inclusive());
  }
  CHECK(hier.counters(CacheLevelId::L1).back_invalidations > 0);
}

TEST_CASE("hierarchy matches the brute-force oracle on random traces") {
  HierarchyConfig cfg;
  cfg.l1 = {4 * 1024, 4, 4};
  cfg.l2 = {16 * 1024, 4, 10};
  cfg.l3 = {64 * 1024, 8, 20};
  Hierarchy hier(cfg);
  testing::OracleHierarchy oracle(cfg);
  uint64_t rng = 99;
  for (int i = 0; i < 5000; ++i) {
    const uint64_t addr = (splitmix64(rng) % 4096) << 6;
    hier.demand_access(addr, AccessKind::load);
    oracle.demand_access(addr);
  }
  for (int lvl = 0; lvl < 3; ++lvl) {
    const LevelCounters& got = hier.counters(static_cast<CacheLevelId>(lvl));
    const auto& want = oracle.counters(lvl);
    CHECK(got.accesses == want.accesses);
    CHECK(got.hits == want.hits);
    CHECK(got.misses == want.misses);
    CHECK(got.evictions == want.evictions);
    CHECK(got.back_invalidations == want.back_invalidations);
  }
}
