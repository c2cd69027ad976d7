#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "umbpsim/prefetcher.hpp"

namespace umbpsim {

// 4 KB pages -> 64 lines per page/zone.
inline constexpr unsigned kLinesPerPage = 64;

class SkeletonPrefetcher final : public Prefetcher {
 public:
  std::vector<int64_t> observe(uint64_t, uint64_t, bool) override { return {}; }
  StorageReport storage_report() const override { return {}; }
  std::string name() const override { return "skeleton"; }
};

class NextLinePrefetcher final : public Prefetcher {
 public:
  std::vector<int64_t> observe(uint64_t, uint64_t line, bool) override {
    return {static_cast<int64_t>(line) + 1};
  }
  StorageReport storage_report() const override { return {}; }
  std::string name() const override { return "next_line"; }
};

// 64-page table; prefetches the next two lines in the established
// direction once confidence reaches 2.
class StreamPrefetcher final : public Prefetcher {
 public:
  StreamPrefetcher();
  std::vector<int64_t> observe(uint64_t ip, uint64_t line, bool l2_hit) override;
  StorageReport storage_report() const override;
  std::string name() const override { return "stream"; }

 private:
  struct Entry {
    uint64_t page = 0;
    unsigned last_offset = 0;
    int direction = 1;  // +1 up, -1 down
    unsigned confidence = 0;  // saturates at 3
    unsigned lru_age = 0;
    bool valid = false;
  };
  std::array<Entry, 64> entries_{};
};

// Per-ip table of the 3 most recent lines; a repeated stride prefetches
// the next three lines at that stride.
class IpStridePrefetcher final : public Prefetcher {
 public:
  explicit IpStridePrefetcher(unsigned entries = 512);
  std::vector<int64_t> observe(uint64_t ip, uint64_t line, bool l2_hit) override;
  StorageReport storage_report() const override;
  std::string name() const override { return "ip_stride"; }

 private:
  struct Entry {
    uint64_t ip = 0;
    std::array<uint64_t, 3> last_lines{};
    unsigned stored = 0;
    unsigned lru_age = 0;
    bool valid = false;
  };
  std::vector<Entry> entries_;
};

// Zone-based access map: 64-line zones with a per-line state cell; a
// stride confirmed at offsets -k and -2k emits offset +k, up to two
// candidates per access.
class AmpmLitePrefetcher final : public Prefetcher {
 public:
  explicit AmpmLitePrefetcher(unsigned zones = 64);
  std::vector<int64_t> observe(uint64_t ip, uint64_t line, bool l2_hit) override;
  StorageReport storage_report() const override;
  std::string name() const override { return "ampm_lite"; }

 private:
  enum class Cell : uint8_t { init, demand, prefetched };
  struct Zone {
    uint64_t zone = 0;  // line >> 6
    std::array<Cell, kLinesPerPage> cells{};
    unsigned lru_age = 0;
    bool valid = false;
  };
  std::vector<Zone> zones_;
};

}  // namespace umbpsim
