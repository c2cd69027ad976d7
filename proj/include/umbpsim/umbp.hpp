#pragma once

#include <cstdint>
#include <vector>

#include "umbpsim/prefetcher.hpp"

namespace umbpsim {

// Per-instruction state, sized to the 203-bit budget: 64b ip, 58b last
// line, 6b last delta, 5b stream count, 32b+32b counters, 6b lru age.
struct InstructionEntry {
  uint64_t ip = 0;
  uint64_t last_line = 0;
  int8_t last_delta = 0;  // valid range [-32, 31]
  bool delta_valid = false;
  uint8_t stream_len = 0;  // saturates at 31
  uint32_t miss_count = 0;
  uint32_t ref_count = 0;
  uint8_t lru_age = 0;  // saturates at 63; 0 = most recent
  bool valid = false;
};

struct UmbpParams {
  unsigned table_entries = 128;
  unsigned common_count = 50;
  unsigned sample_uncommon = 20;
  double threshold = 0.375;  // midpoint of the effective 25-40% band
  unsigned d_low = 1;
  unsigned d_std = 4;
  unsigned d_high = 8;
  uint64_t seed = 1;
};

void validate(const UmbpParams& p);  // throws ConfigError

enum class PatternKind { none, stream, stride, stream_stride };

struct PatternClass {
  PatternKind kind = PatternKind::none;
  int direction = 1;  // stream direction, +1 or -1
  int jump = 0;       // stream_stride jump delta
};

enum class UsageClass { common, uncommon };
enum class MissClass { low, high };

class InstructionTable {
 public:
  explicit InstructionTable(unsigned entries);

  // Existing entry: bump counters and reset its age to most-recent,
  // aging everyone else. Absent: evict the stalest entry if full (ties
  // broken toward the lowest slot), then insert fresh state.
  InstructionEntry& lookup_or_allocate(uint64_t ip, bool l2_miss,
                                       bool* allocated = nullptr);

  InstructionEntry* find(uint64_t ip);
  const InstructionEntry* find(uint64_t ip) const;
  std::size_t occupancy() const;
  const std::vector<InstructionEntry>& slots() const { return slots_; }

 private:
  std::vector<InstructionEntry> slots_;
};

// Stream/stride/stream+stride state machine over successive line deltas.
// Updates the entry in place and returns the classification of this access.
PatternClass detect_pattern(InstructionEntry& entry, uint64_t line);

// common iff fewer than common_count entries have a strictly greater
// reference count; ties favor common. Throws LookupError when absent.
UsageClass classify_usage(const InstructionTable& table, uint64_t ip,
                          const UmbpParams& params);

// Compares the entry's miss rate against the rates of the common_count
// most-referenced entries plus sample_uncommon randomly drawn others
// (queried ip excluded). low iff strictly below at least
// ceil(threshold*|sample|) of them; an empty sample classifies high.
MissClass classify_miss(const InstructionTable& table, uint64_t ip,
                        const UmbpParams& params, uint64_t& rng_state);

unsigned select_degree(UsageClass usage, MissClass miss, const UmbpParams& params);

std::vector<int64_t> generate_candidates(const InstructionEntry& entry,
                                         const PatternClass& pattern,
                                         unsigned degree);

class UmbpPrefetcher final : public Prefetcher {
 public:
  explicit UmbpPrefetcher(const UmbpParams& params = {});

  std::vector<int64_t> observe(uint64_t ip, uint64_t line, bool l2_hit) override;
  StorageReport storage_report() const override;
  std::string name() const override { return "umbp"; }

  const InstructionTable& table() const { return table_; }
  const UmbpParams& params() const { return params_; }

 private:
  UmbpParams params_;
  InstructionTable table_;
  uint64_t rng_state_;
};

}  // namespace umbpsim
