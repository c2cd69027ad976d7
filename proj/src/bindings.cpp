#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "umbpsim/commands.hpp"
#include "umbpsim/config.hpp"
#include "umbpsim/engine.hpp"
#include "umbpsim/metrics.hpp"
#include "umbpsim/prefetcher.hpp"
#include "umbpsim/trace.hpp"
#include "umbpsim/umbp.hpp"

namespace py = pybind11;
using namespace umbpsim;

namespace {

PatternSpec make_spec(const std::string& pattern, uint64_t count, uint64_t start_addr,
                      int64_t stride_lines, uint64_t run_len, int64_t jump_lines,
                      uint64_t region_lines, uint32_t gap, uint64_t ip, uint64_t seed) {
  PatternSpec spec;
  spec.pattern = parse_pattern(pattern);
  spec.count = count;
  spec.start_addr = start_addr;
  spec.stride_lines = stride_lines;
  spec.run_len = run_len;
  spec.jump_lines = jump_lines;
  spec.region_lines = region_lines;
  spec.gap = gap;
  spec.ip = ip;
  spec.seed = seed;
  return spec;
}

py::dict stats_dict(const SimStats& stats) {
  py::dict d;
  d["instructions"] = stats.instructions;
  d["cycles"] = stats.cycles;
  const char* names[3] = {"l1", "l2", "l3"};
  for (int i = 0; i < 3; ++i) {
    py::dict lvl;
    lvl["accesses"] = stats.levels[i].accesses;
    lvl["hits"] = stats.levels[i].hits;
    lvl["misses"] = stats.levels[i].misses;
    lvl["evictions"] = stats.levels[i].evictions;
    lvl["back_invalidations"] = stats.levels[i].back_invalidations;
    d[names[i]] = lvl;
  }
  d["prefetches_issued"] = stats.prefetches_issued;
  d["prefetches_filled"] = stats.prefetches_filled;
  d["prefetches_useful"] = stats.prefetches_useful;
  d["prefetch_fills_l2"] = stats.prefetch_fills_l2;
  d["prefetch_fills_l3"] = stats.prefetch_fills_l3;
  return d;
}

py::dict summary_dict(const RunSummary& s) {
  py::dict d = stats_dict(s.stats);
  d["name"] = s.name;
  d["ipc"] = s.ipc;
  d["l2_miss_rate"] = s.l2_miss_rate;
  d["l3_miss_rate"] = s.l3_miss_rate;
  d["accuracy"] = s.accuracy;
  d["coverage"] = s.coverage;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "trace-driven cache hierarchy simulator with pluggable prefetchers";

  py::class_<TraceRecord>(m, "TraceRecord")
      .def(py::init([](uint64_t ip, uint64_t addr, bool store, uint32_t gap) {
             return TraceRecord{ip, addr, store ? AccessKind::store : AccessKind::load, gap};
           }),
           py::arg("ip"), py::arg("addr"), py::arg("store") = false, py::arg("gap") = 0)
      .def_readwrite("ip", &TraceRecord::ip)
      .def_readwrite("addr", &TraceRecord::addr)
      .def_readwrite("gap", &TraceRecord::gap)
      .def_property(
          "store", [](const TraceRecord& r) { return r.kind == AccessKind::store; },
          [](TraceRecord& r, bool v) { r.kind = v ? AccessKind::store : AccessKind::load; })
      .def("__eq__", [](const TraceRecord& a, const TraceRecord& b) { return a == b; })
      .def("__repr__", [](const TraceRecord& r) {
        return "TraceRecord(ip=" + std::to_string(r.ip) +
               ", addr=" + std::to_string(r.addr) +
               ", store=" + (r.kind == AccessKind::store ? std::string("True") : "False") +
               ", gap=" + std::to_string(r.gap) + ")";
      });

  m.def(
      "generate",
      [](const std::string& pattern, uint64_t count, uint64_t start_addr,
         int64_t stride_lines, uint64_t run_len, int64_t jump_lines,
         uint64_t region_lines, uint32_t gap, uint64_t ip, uint64_t seed) {
        return generate(make_spec(pattern, count, start_addr, stride_lines, run_len,
                                  jump_lines, region_lines, gap, ip, seed));
      },
      py::arg("pattern"), py::arg("count"), py::arg("start_addr") = 0,
      py::arg("stride_lines") = 1, py::arg("run_len") = 1, py::arg("jump_lines") = 0,
      py::arg("region_lines") = 1, py::arg("gap") = 5, py::arg("ip") = 0,
      py::arg("seed") = 0, "Generate a synthetic trace.");

  m.def("interleave", &interleave, py::arg("traces"), py::arg("seed"));
  m.def(
      "write_trace",
      [](const Trace& t, const std::string& path) { return write_trace(t, path); },
      py::arg("trace"), py::arg("path"));
  m.def(
      "read_trace", [](const std::string& path) { return read_trace(path); },
      py::arg("path"));

  m.def(
      "simulate",
      [](const Trace& trace, const std::string& prefetcher, py::kwargs kwargs) {
        RunConfig cfg;
        for (auto item : kwargs)
          apply_config_line(cfg, py::cast<std::string>(item.first),
                            py::cast<std::string>(py::str(item.second)));
        auto pf = make_prefetcher(prefetcher, cfg.umbp);
        const SimStats stats = run(trace, *pf, cfg.hierarchy, cfg.engine);
        RunSummary s = summarize(stats, prefetcher,
                                 run_digest(trace, cfg.hierarchy, cfg.engine));
        return summary_dict(s);
      },
      py::arg("trace"), py::arg("prefetcher") = "umbp",
      "Run one prefetcher over a trace; keyword arguments use config-file keys.");

  m.def(
      "compare",
      [](const Trace& trace, const std::vector<std::string>& prefetchers,
         py::kwargs kwargs) {
        RunConfig cfg;
        for (auto item : kwargs)
          apply_config_line(cfg, py::cast<std::string>(item.first),
                            py::cast<std::string>(py::str(item.second)));
        const uint64_t digest = run_digest(trace, cfg.hierarchy, cfg.engine);
        auto run_named = [&](const std::string& name) {
          auto pf = make_prefetcher(name, cfg.umbp);
          return summarize(run(trace, *pf, cfg.hierarchy, cfg.engine), name, digest);
        };
        const RunSummary skeleton = run_named("skeleton");
        py::list rows;
        for (const std::string& name : prefetchers) {
          RunSummary row = name == "skeleton" ? skeleton : run_named(name);
          row.coverage = coverage(row, skeleton);
          rows.append(summary_dict(row));
        }
        return rows;
      },
      py::arg("trace"), py::arg("prefetchers"),
      "Run several prefetchers over one trace; coverage is vs. skeleton.");

  m.def(
      "storage_report",
      [](const std::string& prefetcher) {
        UmbpParams params;
        auto pf = make_prefetcher(prefetcher, params);
        const StorageReport report = pf->storage_report();
        py::dict d;
        py::dict parts;
        for (const auto& [name, bits] : report.parts) parts[py::str(name)] = bits;
        d["parts"] = parts;
        d["total_bits"] = report.total_bits();
        if (report.quoted_bits) {
          d["quoted_bits"] = *report.quoted_bits;
          d["matches_quoted"] = report.matches_quoted();
        }
        return d;
      },
      py::arg("prefetcher"));
}
