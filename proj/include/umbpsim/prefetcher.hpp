#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace umbpsim {

struct StorageReport {
  // (component name, bits), e.g. {"instruction_table", 25984}
  std::vector<std::pair<std::string, uint64_t>> parts;
  // Storage budget quoted in the original design write-up, when one exists.
  std::optional<uint64_t> quoted_bits;

  uint64_t total_bits() const;
  bool matches_quoted() const;
};

class Prefetcher {
 public:
  virtual ~Prefetcher() = default;

  // Called once per demand access that missed L1. Returns candidate line
  // numbers, nearest-first. Candidates may be negative when a descending
  // pattern runs off the bottom of the address space; callers drop those.
  virtual std::vector<int64_t> observe(uint64_t ip, uint64_t line, bool l2_hit) = 0;

  virtual StorageReport storage_report() const = 0;
  virtual std::string name() const = 0;

  uint64_t storage_bits() const { return storage_report().total_bits(); }
};

struct UmbpParams;

// Known names: skeleton, next_line, stream, ip_stride, ampm_lite, umbp.
// Throws SpecError for anything else.
std::unique_ptr<Prefetcher> make_prefetcher(const std::string& name,
                                            const UmbpParams& umbp_params);

}  // namespace umbpsim
