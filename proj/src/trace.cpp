#include "umbpsim/trace.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "umbpsim/errors.hpp"

namespace umbpsim {

namespace {

constexpr char kMagic[5] = {'P', 'F', 'T', 'R', '1'};
constexpr std::size_t kRecordBytes = 8 + 8 + 1 + 4;

void put_le(unsigned char* dst, uint64_t v, unsigned bytes) {
  for (unsigned i = 0; i < bytes; ++i) dst[i] = static_cast<unsigned char>(v >> (8 * i));
}

uint64_t get_le(const unsigned char* src, unsigned bytes) {
  uint64_t v = 0;
  for (unsigned i = 0; i < bytes; ++i) v |= static_cast<uint64_t>(src[i]) << (8 * i);
  return v;
}

}  // namespace

Pattern parse_pattern(const std::string& name) {
  if (name == "stream") return Pattern::stream;
  if (name == "stride") return Pattern::stride;
  if (name == "stream_stride") return Pattern::stream_stride;
  if (name == "random") return Pattern::random;
  throw SpecError("unknown pattern: " + name);
}

std::string pattern_name(Pattern p) {
  switch (p) {
    case Pattern::stream: return "stream";
    case Pattern::stride: return "stride";
    case Pattern::stream_stride: return "stream_stride";
    case Pattern::random: return "random";
  }
  return "?";
}

void validate(const PatternSpec& spec) {
  if (spec.pattern == Pattern::stride && spec.stride_lines == 0)
    throw SpecError("stride pattern requires stride_lines != 0");
  if (spec.pattern == Pattern::stream_stride && spec.run_len < 1)
    throw SpecError("stream_stride pattern requires run_len >= 1");
  if (spec.pattern == Pattern::random && spec.region_lines < 1)
    throw SpecError("random pattern requires region_lines >= 1");
}

Trace generate(const PatternSpec& spec) {
  validate(spec);
  Trace trace;
  trace.reserve(spec.count);
  uint64_t rng = spec.seed;
  for (uint64_t i = 0; i < spec.count; ++i) {
    int64_t line_off = 0;
    switch (spec.pattern) {
      case Pattern::stream:
        line_off = static_cast<int64_t>(i);
        break;
      case Pattern::stride:
        line_off = static_cast<int64_t>(i) * spec.stride_lines;
        break;
      case Pattern::stream_stride: {
        const int64_t run = static_cast<int64_t>(i / spec.run_len);
        const int64_t pos = static_cast<int64_t>(i % spec.run_len);
        line_off = run * spec.jump_lines + pos;
        break;
      }
      case Pattern::random:
        line_off = static_cast<int64_t>(splitmix64(rng) % spec.region_lines);
        break;
    }
    TraceRecord rec;
    rec.ip = spec.ip;
    rec.addr = spec.start_addr + static_cast<uint64_t>(line_off) * kLineBytes;
    rec.kind = AccessKind::load;
    rec.gap = spec.gap;
    trace.push_back(rec);
  }
  return trace;
}

Trace interleave(const std::vector<Trace>& traces, uint64_t seed) {
  Trace out;
  uint64_t total = 0;
  for (const Trace& t : traces) total += t.size();
  out.reserve(total);

  std::vector<std::size_t> pos(traces.size(), 0);
  uint64_t rng = seed;
  std::size_t source = 0;
  while (out.size() < total) {
    // round-robin over sources with a jittered chunk of 1 or 2 records
    if (pos[source] < traces[source].size()) {
      std::size_t take = 1 + (splitmix64(rng) & 1);
      while (take-- > 0 && pos[source] < traces[source].size())
        out.push_back(traces[source][pos[source]++]);
    }
    source = (source + 1) % traces.size();
  }
  return out;
}

uint64_t write_trace(const Trace& trace, std::ostream& out) {
  out.write(kMagic, sizeof(kMagic));
  std::array<unsigned char, kRecordBytes> buf;
  for (const TraceRecord& rec : trace) {
    put_le(buf.data(), rec.ip, 8);
    put_le(buf.data() + 8, rec.addr, 8);
    buf[16] = static_cast<unsigned char>(rec.kind);
    put_le(buf.data() + 17, rec.gap, 4);
    out.write(reinterpret_cast<const char*>(buf.data()), buf.size());
  }
  if (!out) throw FormatError("trace write failed");
  return sizeof(kMagic) + trace.size() * kRecordBytes;
}

uint64_t write_trace(const Trace& trace, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot open for writing: " + path);
  return write_trace(trace, out);
}

namespace {

uint64_t parse_u64(const std::string& field, std::size_t line_no) {
  try {
    std::size_t used = 0;
    uint64_t v = std::stoull(field, &used, 0);  // base 0: accepts 0x..
    if (used != field.size()) throw std::invalid_argument(field);
    return v;
  } catch (const std::exception&) {
    throw FormatError("bad trace text field '" + field + "' on line " +
                      std::to_string(line_no));
  }
}

AccessKind parse_kind(const std::string& field, std::size_t line_no) {
  if (field == "load" || field == "0") return AccessKind::load;
  if (field == "store" || field == "1") return AccessKind::store;
  throw FormatError("bad access kind '" + field + "' on line " +
                    std::to_string(line_no));
}

Trace read_text_trace(std::istream& in) {
  Trace trace;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string f0, f1, f2, f3;
    if (!std::getline(ss, f0, ',') || !std::getline(ss, f1, ',') ||
        !std::getline(ss, f2, ',') || !std::getline(ss, f3))
      throw FormatError("bad trace text record on line " + std::to_string(line_no));
    TraceRecord rec;
    rec.ip = parse_u64(f0, line_no);
    rec.addr = parse_u64(f1, line_no);
    rec.kind = parse_kind(f2, line_no);
    rec.gap = static_cast<uint32_t>(parse_u64(f3, line_no));
    trace.push_back(rec);
  }
  return trace;
}

}  // namespace

Trace read_trace(std::istream& in) {
  char magic[sizeof(kMagic)] = {};
  in.read(magic, sizeof(kMagic));
  const std::size_t got = static_cast<std::size_t>(in.gcount());
  if (got == sizeof(kMagic) && std::memcmp(magic, kMagic, sizeof(kMagic)) == 0) {
    Trace trace;
    std::array<unsigned char, kRecordBytes> buf;
    for (std::size_t index = 0;; ++index) {
      in.read(reinterpret_cast<char*>(buf.data()), buf.size());
      const std::size_t n = static_cast<std::size_t>(in.gcount());
      if (n == 0) break;
      if (n < kRecordBytes) throw TruncationError(index);
      TraceRecord rec;
      rec.ip = get_le(buf.data(), 8);
      rec.addr = get_le(buf.data() + 8, 8);
      if (buf[16] > 1) throw FormatError("bad access kind in record " + std::to_string(index));
      rec.kind = static_cast<AccessKind>(buf[16]);
      rec.gap = static_cast<uint32_t>(get_le(buf.data() + 17, 4));
      trace.push_back(rec);
    }
    return trace;
  }

  // Text fallback: rewind and parse line-by-line; an unparsable first
  // line is a format error (covers bogus magics too).
  in.clear();
  in.seekg(0);
  if (!in) throw FormatError("bad trace magic and stream not seekable");
  return read_text_trace(in);
}

Trace read_trace(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open trace: " + path);
  return read_trace(in);
}

}  // namespace umbpsim
