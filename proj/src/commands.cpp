#include "umbpsim/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "umbpsim/errors.hpp"
#include "umbpsim/metrics.hpp"
#include "umbpsim/prefetcher.hpp"

namespace umbpsim {

namespace {

constexpr int kOk = 0;
constexpr int kIoError = 1;
constexpr int kUsageError = 2;

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot open for writing: " + path);
  out << text;
  if (!out) throw FormatError("write failed: " + path);
}

void print_storage(const Prefetcher& pf, std::ostream& msg) {
  const StorageReport report = pf.storage_report();
  msg << "storage[" << pf.name() << "]: total " << report.total_bits() << " bits";
  for (const auto& [part, bits] : report.parts) msg << ", " << part << " " << bits << " bits";
  if (report.quoted_bits) {
    msg << " (design write-up quotes " << *report.quoted_bits << " bits; "
        << (report.matches_quoted() ? "matches" : "differs") << ")";
  }
  msg << "\n";
}

RunSummary run_one(const Trace& trace, const std::string& prefetcher_name,
                   const RunConfig& cfg, uint64_t digest) {
  auto pf = make_prefetcher(prefetcher_name, cfg.umbp);
  const SimStats stats = run(trace, *pf, cfg.hierarchy, cfg.engine);
  return summarize(stats, prefetcher_name, digest);
}

}  // namespace

int cmd_gen(const PatternSpec& spec, const std::string& out_path,
            std::ostream& msg, std::ostream& err) {
  try {
    const Trace trace = generate(spec);
    write_trace(trace, out_path);
    msg << trace.size() << " records written to " << out_path << "\n";
    return kOk;
  } catch (const SpecError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  }
}

int cmd_run(const RunConfig& cfg, std::ostream& msg, std::ostream& err) {
  try {
    auto pf = make_prefetcher(cfg.prefetcher, cfg.umbp);  // name check first
    const Trace trace = read_trace(cfg.trace_path);
    const uint64_t digest = run_digest(trace, cfg.hierarchy, cfg.engine);
    const SimStats stats = run(trace, *pf, cfg.hierarchy, cfg.engine);
    const RunSummary summary = summarize(stats, cfg.prefetcher, digest);

    const std::string csv = to_csv({summary});
    if (!cfg.output_path.empty()) write_file(cfg.output_path, csv);

    msg << "prefetcher: " << summary.name << "\n"
        << "instructions: " << stats.instructions << "  cycles: " << stats.cycles
        << "  ipc: " << summary.ipc << "\n"
        << "l1 misses: " << stats.levels[0].misses
        << "  l2 misses: " << stats.levels[1].misses
        << "  l3 misses: " << stats.levels[2].misses << "\n"
        << "prefetches issued: " << stats.prefetches_issued
        << "  useful: " << stats.prefetches_useful
        << "  accuracy: " << summary.accuracy << "\n";
    print_storage(*pf, msg);
    return kOk;
  } catch (const SpecError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  }
}

int cmd_compare(const RunConfig& cfg, const std::vector<std::string>& prefetchers,
                std::ostream& msg, std::ostream& err) {
  try {
    if (prefetchers.empty()) throw SpecError("compare needs at least one prefetcher");
    for (const std::string& name : prefetchers) make_prefetcher(name, cfg.umbp);

    const Trace trace = read_trace(cfg.trace_path);
    const uint64_t digest = run_digest(trace, cfg.hierarchy, cfg.engine);

    const RunSummary skeleton = run_one(trace, "skeleton", cfg, digest);
    std::vector<RunSummary> rows;
    for (const std::string& name : prefetchers) {
      RunSummary row = name == "skeleton" ? skeleton : run_one(trace, name, cfg, digest);
      row.coverage = coverage(row, skeleton);
      rows.push_back(std::move(row));
    }

    const std::string csv = to_csv(rows);
    if (!cfg.output_path.empty()) write_file(cfg.output_path, csv);
    msg << csv;
    return kOk;
  } catch (const SpecError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  }
}

int cmd_sweep(const RunConfig& cfg, const SweepGrid& grid, std::ostream& msg,
              std::ostream& err) {
  try {
    if (grid.d_low.empty() || grid.d_std.empty() || grid.d_high.empty() ||
        grid.threshold.empty())
      throw SpecError("sweep grid must be non-empty on every axis");

    SweepGrid g = grid;
    std::sort(g.d_low.begin(), g.d_low.end());
    std::sort(g.d_std.begin(), g.d_std.end());
    std::sort(g.d_high.begin(), g.d_high.end());
    std::sort(g.threshold.begin(), g.threshold.end());

    const Trace trace = read_trace(cfg.trace_path);
    const uint64_t digest = run_digest(trace, cfg.hierarchy, cfg.engine);

    std::ostringstream csv;
    csv << "d_low,d_std,d_high,threshold,"
        << "name,instructions,cycles,ipc,l1_misses,l2_misses,l3_misses,issued,"
           "useful,accuracy,coverage\n";
    for (unsigned d_low : g.d_low) {
      for (unsigned d_std : g.d_std) {
        for (unsigned d_high : g.d_high) {
          if (!(d_low <= d_std && d_std <= d_high)) continue;
          for (double threshold : g.threshold) {
            RunConfig point = cfg;
            point.umbp.d_low = d_low;
            point.umbp.d_std = d_std;
            point.umbp.d_high = d_high;
            point.umbp.threshold = threshold;
            const RunSummary row = run_one(trace, "umbp", point, digest);
            std::string body = to_csv({row});
            body.erase(0, body.find('\n') + 1);  // drop the inner header
            char params[64];
            std::snprintf(params, sizeof(params), "%u,%u,%u,%.6f,", d_low, d_std,
                          d_high, threshold);
            csv << params << body;
          }
        }
      }
    }

    if (!cfg.output_path.empty()) write_file(cfg.output_path, csv.str());
    msg << csv.str();
    return kOk;
  } catch (const SpecError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  }
}

}  // namespace umbpsim
