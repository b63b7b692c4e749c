// hexbandit command-line front end. Talks to the core exclusively through
// the C API in hexbandit.h.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hexbandit.h"

namespace {

int fail_with(hxb_status status, const std::string& context) {
  std::cerr << "error: " << context;
  const char* detail = hxb_last_error();
  if (detail && *detail) std::cerr << ": " << detail;
  std::cerr << "\n";
  switch (status) {
    case HXB_ERR_CONFIG: return 2;
    case HXB_ERR_IO: return 3;
    default: return 1;
  }
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buf;
  buf << in.rdbuf();
  out = buf.str();
  return true;
}

int run_simulate(const std::string& config_path, std::uint64_t seed, const std::string& out_dir) {
  std::string config;
  if (!read_file(config_path, config)) {
    std::cerr << "error: cannot read config file " << config_path << "\n";
    return 3;
  }
  hxb_sim* sim = nullptr;
  hxb_status status = hxb_sim_create(config.c_str(), &sim);
  if (status != HXB_OK) return fail_with(status, "invalid simulation config");

  hxb_trace* trace = nullptr;
  status = hxb_sim_run(sim, seed, &trace);
  if (status != HXB_OK) {
    hxb_sim_free(sim);
    return fail_with(status, "simulation failed");
  }
  status = hxb_trace_write_outputs(trace, sim, seed, out_dir.c_str());
  if (status != HXB_OK) {
    hxb_trace_free(trace);
    hxb_sim_free(sim);
    return fail_with(status, "writing outputs failed");
  }
  std::printf("simulate: %d layers, %d arms, horizon %lld, seed %llu\n",
              hxb_sim_num_layers(sim), hxb_sim_num_arms(sim),
              static_cast<long long>(hxb_sim_horizon(sim)),
              static_cast<unsigned long long>(seed));
  std::printf("final pseudo-regret: %.6f\n", hxb_trace_final_regret(trace));
  std::printf("outputs written to %s\n", out_dir.c_str());
  hxb_trace_free(trace);
  hxb_sim_free(sim);
  return 0;
}

int run_bounds(const std::string& config_path) {
  std::string config;
  if (!read_file(config_path, config)) {
    std::cerr << "error: cannot read config file " << config_path << "\n";
    return 3;
  }
  char* json = nullptr;
  char* table = nullptr;
  const hxb_status status = hxb_bounds_report(config.c_str(), &json, &table);
  if (status != HXB_OK) return fail_with(status, "bound evaluation failed");
  std::printf("%s\n%s\n", table, json);
  hxb_string_free(json);
  hxb_string_free(table);
  return 0;
}

int run_experiment(const std::string& kind, const std::string& config_path, bool seed_given,
                   std::uint64_t seed, const std::string& scale, const std::string& out_dir) {
  std::string config;
  if (!read_file(config_path, config)) {
    std::cerr << "error: cannot read config file " << config_path << "\n";
    return 3;
  }
  char* summary = nullptr;
  const std::uint64_t* seed_ptr = seed_given ? &seed : nullptr;
  const hxb_status status = hxb_experiment_run(config.c_str(), kind.c_str(), seed_ptr,
                                               scale.c_str(), out_dir.c_str(), &summary);
  if (status != HXB_OK) return fail_with(status, "experiment failed");
  std::printf("%s\n", summary);
  std::printf("outputs written to %s\n", out_dir.c_str());
  hxb_string_free(summary);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hierarchical experts bandit simulator"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out", scale = "desk";
  std::uint64_t seed = 1;

  CLI::App* simulate = app.add_subcommand("simulate", "run one configured hierarchy");
  simulate->add_option("--config", config_path, "config JSON file")->required();
  simulate->add_option("--seed", seed, "root seed");
  simulate->add_option("--out", out_dir, "output directory")->envname("HEXBANDIT_OUT");

  CLI::App* bounds = app.add_subcommand("bounds", "evaluate a closed-form regret bound");
  bounds->add_option("--config", config_path, "bound request JSON file")->required();

  CLI::App* experiment = app.add_subcommand("experiment", "reproduce one of the experiments");
  std::string kind;
  experiment
      ->add_option("kind", kind, "param-inflation | selection-ranges | expert-count")
      ->required()
      ->check(CLI::IsMember({"param-inflation", "selection-ranges", "expert-count"}));
  experiment->add_option("--config", config_path, "config JSON file")->required();
  CLI::Option* seed_opt = experiment->add_option("--seed", seed, "root seed");
  experiment->add_option("--scale", scale, "desk | paper")
      ->check(CLI::IsMember({"desk", "paper"}));
  experiment->add_option("--out", out_dir, "output directory")->envname("HEXBANDIT_OUT");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help exits 0; every command-line mistake is a configuration error
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (simulate->parsed()) return run_simulate(config_path, seed, out_dir);
  if (bounds->parsed()) return run_bounds(config_path);
  if (experiment->parsed()) {
    return run_experiment(kind, config_path, seed_opt->count() > 0, seed, scale, out_dir);
  }
  return 1;
}
