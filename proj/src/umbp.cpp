#include "umbpsim/umbp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

#include "umbpsim/errors.hpp"
#include "umbpsim/trace.hpp"

namespace umbpsim {

namespace {

constexpr int64_t kDeltaMin = -32;
constexpr int64_t kDeltaMax = 31;
constexpr uint8_t kStreamLenMax = 31;
constexpr uint8_t kLruMax = 63;
constexpr uint64_t kEntryBits = 203;
constexpr uint64_t kSampleEntryBits = 64;

double miss_rate(const InstructionEntry& e) {
  return e.ref_count == 0 ? 0.0
                          : static_cast<double>(e.miss_count) / e.ref_count;
}

}  // namespace

void validate(const UmbpParams& p) {
  if (p.table_entries == 0) throw ConfigError("umbp table_entries must be > 0");
  if (p.common_count + p.sample_uncommon > p.table_entries)
    throw ConfigError("umbp common_count + sample_uncommon exceeds table size");
  if (p.d_low == 0 || p.d_low > p.d_std || p.d_std > p.d_high)
    throw ConfigError("umbp degrees must satisfy 0 < d_low <= d_std <= d_high");
  if (!(p.threshold > 0.0 && p.threshold <= 1.0))
    throw ConfigError("umbp threshold must be in (0, 1]");
}

InstructionTable::InstructionTable(unsigned entries) : slots_(entries) {}

std::size_t InstructionTable::occupancy() const {
  std::size_t n = 0;
  for (const InstructionEntry& e : slots_)
    if (e.valid) ++n;
  return n;
}

InstructionEntry* InstructionTable::find(uint64_t ip) {
  for (InstructionEntry& e : slots_)
    if (e.valid && e.ip == ip) return &e;
  return nullptr;
}

const InstructionEntry* InstructionTable::find(uint64_t ip) const {
  return const_cast<InstructionTable*>(this)->find(ip);
}

InstructionEntry& InstructionTable::lookup_or_allocate(uint64_t ip, bool l2_miss,
                                                       bool* allocated) {
  if (allocated) *allocated = false;
  InstructionEntry* hit = find(ip);
  if (hit) {
    for (InstructionEntry& e : slots_)
      if (e.valid && &e != hit && e.lru_age < kLruMax) ++e.lru_age;
    hit->lru_age = 0;
    ++hit->ref_count;
    if (l2_miss) ++hit->miss_count;
    return *hit;
  }

  InstructionEntry* slot = nullptr;
  for (InstructionEntry& e : slots_) {
    if (!e.valid) {
      slot = &e;
      break;
    }
  }
  if (!slot) {
    // stalest entry; after age saturation ties resolve to the lowest slot
    for (InstructionEntry& e : slots_)
      if (!slot || e.lru_age > slot->lru_age) slot = &e;
  }
  for (InstructionEntry& e : slots_)
    if (e.valid && &e != slot && e.lru_age < kLruMax) ++e.lru_age;
  *slot = InstructionEntry{};
  slot->valid = true;
  slot->ip = ip;
  slot->ref_count = 1;
  slot->miss_count = l2_miss ? 1 : 0;
  slot->lru_age = 0;
  if (allocated) *allocated = true;
  return *slot;
}

PatternClass detect_pattern(InstructionEntry& entry, uint64_t line) {
  const int64_t delta = static_cast<int64_t>(line - entry.last_line);
  PatternClass out;

  if (delta == 0) return out;

  if (delta < kDeltaMin || delta > kDeltaMax) {
    // out-of-range deltas invalidate rather than saturate; saturating
    // would fabricate strides
    entry.delta_valid = false;
    entry.stream_len = 0;
    entry.last_line = line;
    return out;
  }

  const int8_t d8 = static_cast<int8_t>(delta);
  if (delta == 1 || delta == -1) {
    if (entry.delta_valid && entry.last_delta == d8) {
      out.kind = PatternKind::stream;
      out.direction = static_cast<int>(delta);
      if (entry.stream_len < kStreamLenMax) ++entry.stream_len;
    } else {
      entry.stream_len = 1;
      entry.last_delta = d8;
      entry.delta_valid = true;
    }
  } else {
    if (entry.delta_valid && entry.last_delta == d8) {
      out.kind = PatternKind::stride;
    } else if (entry.stream_len >= 2) {
      // a stream broken by a larger jump: prefetch the rest of the run,
      // then the jump target
      out.kind = PatternKind::stream_stride;
      out.jump = static_cast<int>(delta);
      entry.last_delta = d8;
      entry.delta_valid = true;
    } else {
      entry.last_delta = d8;
      entry.delta_valid = true;
      entry.stream_len = 0;
    }
  }
  entry.last_line = line;
  return out;
}

UsageClass classify_usage(const InstructionTable& table, uint64_t ip,
                          const UmbpParams& params) {
  const InstructionEntry* self = table.find(ip);
  if (!self) throw LookupError("classify_usage: ip not tracked");
  unsigned greater = 0;
  for (const InstructionEntry& e : table.slots())
    if (e.valid && e.ref_count > self->ref_count) ++greater;
  return greater < params.common_count ? UsageClass::common : UsageClass::uncommon;
}

MissClass classify_miss(const InstructionTable& table, uint64_t ip,
                        const UmbpParams& params, uint64_t& rng_state) {
  const InstructionEntry* self = table.find(ip);
  if (!self) throw LookupError("classify_miss: ip not tracked");

  // every tracked entry except the queried one, ranked by reference
  // count (ties toward the lower slot)
  std::vector<const InstructionEntry*> others;
  for (const InstructionEntry& e : table.slots())
    if (e.valid && &e != self) others.push_back(&e);
  std::stable_sort(others.begin(), others.end(),
                   [](const InstructionEntry* a, const InstructionEntry* b) {
                     return a->ref_count > b->ref_count;
                   });

  std::vector<double> sample;
  const std::size_t n_common = std::min<std::size_t>(params.common_count, others.size());
  for (std::size_t i = 0; i < n_common; ++i) sample.push_back(miss_rate(*others[i]));

  // uniform draw without replacement from the remainder
  std::vector<const InstructionEntry*> rest(others.begin() + n_common, others.end());
  const std::size_t n_rand = std::min<std::size_t>(params.sample_uncommon, rest.size());
  for (std::size_t i = 0; i < n_rand; ++i) {
    const std::size_t j = i + splitmix64(rng_state) % (rest.size() - i);
    std::swap(rest[i], rest[j]);
    sample.push_back(miss_rate(*rest[i]));
  }

  if (sample.empty()) return MissClass::high;

  const double own = miss_rate(*self);
  std::size_t strictly_lower = 0;
  for (double s : sample)
    if (own < s) ++strictly_lower;
  const auto needed = static_cast<std::size_t>(
      std::ceil(params.threshold * static_cast<double>(sample.size())));
  return strictly_lower >= needed ? MissClass::low : MissClass::high;
}

unsigned select_degree(UsageClass usage, MissClass miss, const UmbpParams& params) {
  if (usage == UsageClass::common && miss == MissClass::high) return params.d_high;
  if (usage == UsageClass::uncommon && miss == MissClass::low) return params.d_low;
  return params.d_std;
}

std::vector<int64_t> generate_candidates(const InstructionEntry& entry,
                                         const PatternClass& pattern,
                                         unsigned degree) {
  std::vector<int64_t> out;
  const int64_t line = static_cast<int64_t>(entry.last_line);
  switch (pattern.kind) {
    case PatternKind::none:
      break;
    case PatternKind::stream: {
      const int64_t d = pattern.direction;
      for (unsigned k = 1; k <= degree; ++k) out.push_back(line + d * static_cast<int64_t>(k));
      break;
    }
    case PatternKind::stride: {
      const int64_t s = entry.last_delta;
      for (unsigned k = 1; k <= degree; ++k) out.push_back(line + s * static_cast<int64_t>(k));
      break;
    }
    case PatternKind::stream_stride: {
      // continue the broken run first, then follow the jump
      const unsigned run = std::min<unsigned>(entry.stream_len - 1, degree);
      for (unsigned k = 1; k <= run; ++k) out.push_back(line + static_cast<int64_t>(k));
      for (unsigned k = 0; k < degree - run; ++k)
        out.push_back(line + pattern.jump + static_cast<int64_t>(k));
      break;
    }
  }
  return out;
}

UmbpPrefetcher::UmbpPrefetcher(const UmbpParams& params)
    : params_(params), table_(params.table_entries), rng_state_(params.seed) {
  validate(params_);
}

std::vector<int64_t> UmbpPrefetcher::observe(uint64_t ip, uint64_t line, bool l2_hit) {
  bool allocated = false;
  InstructionEntry& entry = table_.lookup_or_allocate(ip, !l2_hit, &allocated);
  if (allocated) {
    // no history yet; record the line so the next access sees a delta
    entry.last_line = line;
    return {};
  }
  const PatternClass pattern = detect_pattern(entry, line);
  if (pattern.kind == PatternKind::none) return {};
  const UsageClass usage = classify_usage(table_, ip, params_);
  const MissClass miss = classify_miss(table_, ip, params_, rng_state_);
  const unsigned degree = select_degree(usage, miss, params_);
  return generate_candidates(entry, pattern, degree);
}

StorageReport UmbpPrefetcher::storage_report() const {
  StorageReport report;
  report.parts.emplace_back("instruction_table",
                            static_cast<uint64_t>(params_.table_entries) * kEntryBits);
  report.parts.emplace_back(
      "miss_sample",
      static_cast<uint64_t>(params_.common_count + params_.sample_uncommon) *
          kSampleEntryBits);
  report.quoted_bits = 32768;  // the design write-up claims 2^15 bits total
  return report;
}

}  // namespace umbpsim
