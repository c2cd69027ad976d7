#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "umbpsim/commands.hpp"
#include "umbpsim/errors.hpp"

namespace {

using namespace umbpsim;

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string field;
  while (std::getline(ss, field, ','))
    if (!field.empty()) out.push_back(field);
  return out;
}

template <typename T>
std::vector<T> parse_list(const std::string& key, const std::string& text) {
  std::vector<T> out;
  for (const std::string& f : split_csv(text)) {
    try {
      if constexpr (std::is_floating_point_v<T>)
        out.push_back(static_cast<T>(std::stod(f)));
      else
        out.push_back(static_cast<T>(std::stoull(f)));
    } catch (const std::exception&) {
      throw ConfigError("bad value in --" + key + ": " + f);
    }
  }
  return out;
}

void add_run_options(CLI::App* cmd, RunConfig& cfg, std::string& config_path,
                     std::vector<std::pair<std::string, std::string>>& overrides) {
  cmd->add_option("--trace", cfg.trace_path, "trace file to simulate");
  cmd->add_option("--config", config_path, "key=value config file");
  cmd->add_option("-o,--output", cfg.output_path, "CSV output path");
  // everything else goes through the config-key mechanism so CLI flags and
  // file keys stay in sync
  cmd->add_option_function<std::vector<std::string>>(
      "--set",
      [&overrides](const std::vector<std::string>& kvs) {
        for (const std::string& kv : kvs) {
          const auto eq = kv.find('=');
          if (eq == std::string::npos) throw CLI::ValidationError("--set expects key=value");
          overrides.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
        }
      },
      "config override, key=value (repeatable)");
}

void finalize_config(RunConfig& cfg, const std::string& config_path,
                     const std::vector<std::pair<std::string, std::string>>& overrides) {
  if (!config_path.empty()) apply_config_file(cfg, config_path);
  for (const auto& [key, value] : overrides) apply_config_line(cfg, key, value);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"trace-driven cache hierarchy simulator with pluggable prefetchers"};
  app.require_subcommand(1);

  // gen
  PatternSpec spec;
  std::string pattern_name_arg = "stream";
  std::string gen_out = "out.trace";
  CLI::App* gen = app.add_subcommand("gen", "generate a synthetic trace");
  gen->add_option("--pattern", pattern_name_arg, "stream|stride|stream_stride|random");
  gen->add_option("-n,--count", spec.count, "record count");
  gen->add_option("--start", spec.start_addr, "start byte address");
  gen->add_option("--stride-lines", spec.stride_lines, "line delta (stride)");
  gen->add_option("--run-len", spec.run_len, "lines per run (stream_stride)");
  gen->add_option("--jump-lines", spec.jump_lines, "delta between run starts (stream_stride)");
  gen->add_option("--region-lines", spec.region_lines, "line span (random)");
  gen->add_option("--gap", spec.gap, "non-memory instructions per record");
  gen->add_option("--ip", spec.ip, "instruction identifier");
  gen->add_option("--seed", spec.seed, "PRNG seed");
  gen->add_option("-o,--output", gen_out, "trace output path");

  // run / compare / sweep share config plumbing
  RunConfig run_cfg, cmp_cfg, sweep_cfg;
  std::string run_config_file, cmp_config_file, sweep_config_file;
  std::vector<std::pair<std::string, std::string>> run_over, cmp_over, sweep_over;

  CLI::App* runc = app.add_subcommand("run", "simulate one prefetcher");
  add_run_options(runc, run_cfg, run_config_file, run_over);
  runc->add_option("--prefetcher", run_cfg.prefetcher,
                   "skeleton|next_line|stream|ip_stride|ampm_lite|umbp");

  CLI::App* cmp = app.add_subcommand("compare", "run several prefetchers on one trace");
  std::string cmp_list = "skeleton,next_line,stream,ip_stride,ampm_lite,umbp";
  add_run_options(cmp, cmp_cfg, cmp_config_file, cmp_over);
  cmp->add_option("--prefetchers", cmp_list, "comma-separated prefetcher names");

  CLI::App* sweep = app.add_subcommand("sweep", "sweep degree/threshold parameters");
  std::string d_low_list = "1", d_std_list = "4", d_high_list = "8";
  std::string threshold_list = "0.375";
  add_run_options(sweep, sweep_cfg, sweep_config_file, sweep_over);
  sweep->add_option("--d-low", d_low_list, "comma-separated low degrees");
  sweep->add_option("--d-std", d_std_list, "comma-separated standard degrees");
  sweep->add_option("--d-high", d_high_list, "comma-separated high degrees");
  sweep->add_option("--threshold", threshold_list, "comma-separated thresholds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) {
      spec.pattern = parse_pattern(pattern_name_arg);
      return cmd_gen(spec, gen_out, std::cout, std::cerr);
    }
    if (runc->parsed()) {
      finalize_config(run_cfg, run_config_file, run_over);
      return cmd_run(run_cfg, std::cout, std::cerr);
    }
    if (cmp->parsed()) {
      finalize_config(cmp_cfg, cmp_config_file, cmp_over);
      return cmd_compare(cmp_cfg, split_csv(cmp_list), std::cout, std::cerr);
    }
    if (sweep->parsed()) {
      finalize_config(sweep_cfg, sweep_config_file, sweep_over);
      SweepGrid grid;
      grid.d_low = parse_list<unsigned>("d-low", d_low_list);
      grid.d_std = parse_list<unsigned>("d-std", d_std_list);
      grid.d_high = parse_list<unsigned>("d-high", d_high_list);
      grid.threshold = parse_list<double>("threshold", threshold_list);
      return cmd_sweep(sweep_cfg, grid, std::cout, std::cerr);
    }
  } catch (const SpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
