#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace umbpsim {

inline constexpr unsigned kLineBytes = 64;
inline constexpr unsigned kLineShift = 6;

inline uint64_t line_of(uint64_t addr) { return addr >> kLineShift; }

enum class AccessKind : uint8_t { load = 0, store = 1 };

// One demand memory access.
struct TraceRecord {
  uint64_t ip = 0;    // instruction identifier
  uint64_t addr = 0;  // byte address; line alignment is the consumer's job
  AccessKind kind = AccessKind::load;
  uint32_t gap = 0;  // non-memory instructions retired since the previous record
  bool operator==(const TraceRecord&) const = default;
};

using Trace = std::vector<TraceRecord>;

enum class Pattern { stream, stride, stream_stride, random };

struct PatternSpec {
  Pattern pattern = Pattern::stream;
  uint64_t count = 0;
  uint64_t start_addr = 0;
  int64_t stride_lines = 0;   // stride pattern
  uint64_t run_len = 1;       // stream_stride: lines per consecutive run
  int64_t jump_lines = 0;     // stream_stride: delta between run starts
  uint64_t region_lines = 1;  // random: span of lines
  uint32_t gap = 5;
  uint64_t ip = 0;
  uint64_t seed = 0;
};

// splitmix64 (Steele et al.); fixed algorithm so golden files stay stable.
inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

Pattern parse_pattern(const std::string& name);  // throws SpecError
std::string pattern_name(Pattern p);

void validate(const PatternSpec& spec);  // throws SpecError

Trace generate(const PatternSpec& spec);

// Seeded round-robin merge with jittered chunk sizes; preserves each
// input's internal order.
Trace interleave(const std::vector<Trace>& traces, uint64_t seed);

// Binary format: magic "PFTR1", then per record 8-byte ip, 8-byte addr,
// 1-byte kind (0=load, 1=store), 4-byte gap, little-endian fixed width.
uint64_t write_trace(const Trace& trace, std::ostream& out);
uint64_t write_trace(const Trace& trace, const std::string& path);

// Accepts the binary format, or a text fallback when the magic is absent:
// one record per line, "ip,addr,kind,gap" with hex ip/addr.
Trace read_trace(std::istream& in);
Trace read_trace(const std::string& path);

}  // namespace umbpsim
