#pragma once

#include <string>
#include <vector>

#include "umbpsim/cache.hpp"
#include "umbpsim/engine.hpp"
#include "umbpsim/umbp.hpp"

namespace umbpsim {

struct RunConfig {
  std::string trace_path;
  std::string prefetcher = "umbp";
  std::string output_path;
  HierarchyConfig hierarchy;
  EngineConfig engine;
  UmbpParams umbp;
};

// Flat key=value file; '#' starts a comment. Unknown keys are a
// ConfigError. Keys are listed in the README.
void apply_config_file(RunConfig& cfg, const std::string& path);
void apply_config_line(RunConfig& cfg, const std::string& key,
                       const std::string& value);

struct SweepGrid {
  std::vector<unsigned> d_low;
  std::vector<unsigned> d_std;
  std::vector<unsigned> d_high;
  std::vector<double> threshold;
};

}  // namespace umbpsim
