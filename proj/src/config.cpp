#include "umbpsim/config.hpp"

#include <fstream>

#include "umbpsim/errors.hpp"

namespace umbpsim {

namespace {

uint64_t to_u64(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    uint64_t v = std::stoull(value, &used, 0);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad integer for " + key + ": " + value);
  }
}

double to_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad number for " + key + ": " + value);
  }
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

void apply_config_line(RunConfig& cfg, const std::string& key,
                       const std::string& value) {
  if (key == "trace") cfg.trace_path = value;
  else if (key == "prefetcher") cfg.prefetcher = value;
  else if (key == "output") cfg.output_path = value;
  else if (key == "l1_size") cfg.hierarchy.l1.size_bytes = to_u64(key, value);
  else if (key == "l1_ways") cfg.hierarchy.l1.ways = static_cast<unsigned>(to_u64(key, value));
  else if (key == "l1_latency") cfg.hierarchy.l1.latency_cycles = static_cast<unsigned>(to_u64(key, value));
  else if (key == "l2_size") cfg.hierarchy.l2.size_bytes = to_u64(key, value);
  else if (key == "l2_ways") cfg.hierarchy.l2.ways = static_cast<unsigned>(to_u64(key, value));
  else if (key == "l2_latency") cfg.hierarchy.l2.latency_cycles = static_cast<unsigned>(to_u64(key, value));
  else if (key == "l3_size") cfg.hierarchy.l3.size_bytes = to_u64(key, value);
  else if (key == "l3_ways") cfg.hierarchy.l3.ways = static_cast<unsigned>(to_u64(key, value));
  else if (key == "l3_latency") cfg.hierarchy.l3.latency_cycles = static_cast<unsigned>(to_u64(key, value));
  else if (key == "memory_latency") cfg.hierarchy.memory_latency_cycles = static_cast<unsigned>(to_u64(key, value));
  else if (key == "issue_width") cfg.engine.issue_width = static_cast<unsigned>(to_u64(key, value));
  else if (key == "occupancy_window") cfg.engine.occupancy_window = static_cast<unsigned>(to_u64(key, value));
  else if (key == "occupancy_threshold") cfg.engine.occupancy_threshold = static_cast<unsigned>(to_u64(key, value));
  else if (key == "max_candidates") cfg.engine.max_candidates_per_access = static_cast<unsigned>(to_u64(key, value));
  else if (key == "umbp_table_entries") cfg.umbp.table_entries = static_cast<unsigned>(to_u64(key, value));
  else if (key == "umbp_common") cfg.umbp.common_count = static_cast<unsigned>(to_u64(key, value));
  else if (key == "umbp_sample_uncommon") cfg.umbp.sample_uncommon = static_cast<unsigned>(to_u64(key, value));
  else if (key == "umbp_threshold") cfg.umbp.threshold = to_double(key, value);
  else if (key == "umbp_d_low") cfg.umbp.d_low = static_cast<unsigned>(to_u64(key, value));
  else if (key == "umbp_d_std") cfg.umbp.d_std = static_cast<unsigned>(to_u64(key, value));
  else if (key == "umbp_d_high") cfg.umbp.d_high = static_cast<unsigned>(to_u64(key, value));
  else if (key == "seed") cfg.umbp.seed = to_u64(key, value);
  else throw ConfigError("unknown config key: " + key);
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected key=value at " + path + ":" + std::to_string(line_no));
    apply_config_line(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

}  // namespace umbpsim
