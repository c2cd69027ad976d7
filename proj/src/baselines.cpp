#include "umbpsim/baselines.hpp"

#include <algorithm>

namespace umbpsim {

namespace {

// Replacement over a small table: prefer an invalid slot, otherwise the
// entry with the largest age; touching resets the age to 0 and ages the
// rest.
template <typename It>
It lru_victim(It begin, It end) {
  It victim = begin;
  for (It it = begin; it != end; ++it) {
    if (!it->valid) return it;
    if (it->lru_age > victim->lru_age) victim = it;
  }
  return victim;
}

template <typename It, typename EntryT>
void lru_touch(It begin, It end, EntryT* entry) {
  for (It it = begin; it != end; ++it)
    if (it->valid && &*it != entry) ++it->lru_age;
  entry->lru_age = 0;
}

}  // namespace

StreamPrefetcher::StreamPrefetcher() = default;

std::vector<int64_t> StreamPrefetcher::observe(uint64_t, uint64_t line, bool) {
  const uint64_t page = line / kLinesPerPage;
  const unsigned offset = static_cast<unsigned>(line % kLinesPerPage);

  Entry* entry = nullptr;
  for (Entry& e : entries_)
    if (e.valid && e.page == page) entry = &e;

  if (!entry) {
    entry = &*lru_victim(entries_.begin(), entries_.end());
    *entry = Entry{};
    entry->valid = true;
    entry->page = page;
    entry->last_offset = offset;
    entry->direction = 1;
    entry->confidence = 0;
    lru_touch(entries_.begin(), entries_.end(), entry);
    return {};
  }

  lru_touch(entries_.begin(), entries_.end(), entry);
  if (offset != entry->last_offset) {
    const int moved = offset > entry->last_offset ? 1 : -1;
    if (moved == entry->direction) {
      if (entry->confidence < 3) ++entry->confidence;
    } else {
      entry->confidence = 0;
      entry->direction = moved;
    }
    entry->last_offset = offset;
  }

  if (entry->confidence >= 2) {
    const int64_t d = entry->direction;
    const int64_t l = static_cast<int64_t>(line);
    return {l + d, l + 2 * d};
  }
  return {};
}

StorageReport StreamPrefetcher::storage_report() const {
  StorageReport report;
  // 64 entries x (52b page + 6b offset + 1b direction + 2b confidence + 6b lru)
  report.parts.emplace_back("page_table", 64ull * (52 + 6 + 1 + 2 + 6));
  report.quoted_bits = 1560ull * 8;  // figure quoted in the original description
  return report;
}

IpStridePrefetcher::IpStridePrefetcher(unsigned entries) : entries_(entries) {}

std::vector<int64_t> IpStridePrefetcher::observe(uint64_t ip, uint64_t line, bool) {
  Entry* entry = nullptr;
  for (Entry& e : entries_)
    if (e.valid && e.ip == ip) entry = &e;

  if (!entry) {
    entry = &*lru_victim(entries_.begin(), entries_.end());
    *entry = Entry{};
    entry->valid = true;
    entry->ip = ip;
  }
  lru_touch(entries_.begin(), entries_.end(), entry);

  if (entry->stored < 3) {
    entry->last_lines[entry->stored++] = line;
  } else {
    entry->last_lines[0] = entry->last_lines[1];
    entry->last_lines[1] = entry->last_lines[2];
    entry->last_lines[2] = line;
  }
  if (entry->stored < 3) return {};

  const int64_t s1 = static_cast<int64_t>(entry->last_lines[1] - entry->last_lines[0]);
  const int64_t s2 = static_cast<int64_t>(entry->last_lines[2] - entry->last_lines[1]);
  if (s1 != s2 || s1 == 0) return {};
  const int64_t l = static_cast<int64_t>(line);
  return {l + s1, l + 2 * s1, l + 3 * s1};
}

StorageReport IpStridePrefetcher::storage_report() const {
  StorageReport report;
  // entries x (64b ip + 3x58b lines + 2b count + 9b lru)
  report.parts.emplace_back(
      "ip_table", static_cast<uint64_t>(entries_.size()) * (64 + 3 * 58 + 2 + 9));
  report.quoted_bits = 32780ull * 8;
  return report;
}

AmpmLitePrefetcher::AmpmLitePrefetcher(unsigned zones) : zones_(zones) {}

std::vector<int64_t> AmpmLitePrefetcher::observe(uint64_t, uint64_t line, bool) {
  const uint64_t zone = line / kLinesPerPage;
  const int offset = static_cast<int>(line % kLinesPerPage);

  Zone* z = nullptr;
  for (Zone& cand : zones_)
    if (cand.valid && cand.zone == zone) z = &cand;
  if (!z) {
    z = &*lru_victim(zones_.begin(), zones_.end());
    *z = Zone{};
    z->valid = true;
    z->zone = zone;
  }
  lru_touch(zones_.begin(), zones_.end(), z);

  z->cells[offset] = Cell::demand;

  std::vector<int64_t> out;
  const int64_t base = static_cast<int64_t>(zone) * kLinesPerPage;
  for (int k = 1; k <= 16 && out.size() < 2; ++k) {
    const int a = offset - k, b = offset - 2 * k, t = offset + k;
    if (a < 0 || b < 0 || t >= static_cast<int>(kLinesPerPage)) continue;
    if (z->cells[a] == Cell::demand && z->cells[b] == Cell::demand &&
        z->cells[t] == Cell::init) {
      z->cells[t] = Cell::prefetched;
      out.push_back(base + t);
    }
  }
  return out;
}

StorageReport AmpmLitePrefetcher::storage_report() const {
  StorageReport report;
  // zones x (52b zone tag + 64 2-bit cells + 6b lru)
  report.parts.emplace_back(
      "zone_table", static_cast<uint64_t>(zones_.size()) * (52 + 2 * kLinesPerPage + 6));
  return report;
}

}  // namespace umbpsim
