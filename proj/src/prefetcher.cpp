#include "umbpsim/prefetcher.hpp"

#include "umbpsim/baselines.hpp"
#include "umbpsim/errors.hpp"
#include "umbpsim/umbp.hpp"

namespace umbpsim {

uint64_t StorageReport::total_bits() const {
  uint64_t total = 0;
  for (const auto& [name, bits] : parts) total += bits;
  return total;
}

bool StorageReport::matches_quoted() const {
  return quoted_bits.has_value() && *quoted_bits == total_bits();
}

std::unique_ptr<Prefetcher> make_prefetcher(const std::string& name,
                                            const UmbpParams& umbp_params) {
  if (name == "skeleton") return std::make_unique<SkeletonPrefetcher>();
  if (name == "next_line") return std::make_unique<NextLinePrefetcher>();
  if (name == "stream") return std::make_unique<StreamPrefetcher>();
  if (name == "ip_stride") return std::make_unique<IpStridePrefetcher>();
  if (name == "ampm_lite") return std::make_unique<AmpmLitePrefetcher>();
  if (name == "umbp") return std::make_unique<UmbpPrefetcher>(umbp_params);
  throw SpecError("unknown prefetcher: " + name);
}

}  // namespace umbpsim
