#include "hexbandit.h"

#include <cstring>
#include <string>

#include "config.hpp"
#include "emit.hpp"
#include "errors.hpp"
#include "experiments.hpp"
#include "hierarchy.hpp"
#include "outputs.hpp"

struct hxb_sim {
  hexb::SimulationConfig config;
};

struct hxb_trace {
  hexb::RunTrace trace;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Run `body`, translating exceptions into status codes + last-error text.
template <typename Fn>
hxb_status guarded(Fn&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const hexb::ConfigError& e) {
    set_error(e.what());
    return HXB_ERR_CONFIG;
  } catch (const hexb::IoError& e) {
    set_error(e.what());
    return HXB_ERR_IO;
  } catch (const std::exception& e) {
    set_error(e.what());
    return HXB_ERROR;
  }
}

}  // namespace

extern "C" {

const char* hxb_version(void) { return "1.0.0"; }

const char* hxb_last_error(void) { return g_last_error.c_str(); }

void hxb_string_free(char* s) { delete[] s; }

hxb_status hxb_sim_create(const char* config_json, hxb_sim** out) {
  if (!config_json || !out) {
    set_error("hxb_sim_create: null argument");
    return HXB_ERROR;
  }
  *out = nullptr;
  return guarded([&] {
    auto sim = new hxb_sim{hexb::parse_simulation_config(config_json)};
    *out = sim;
    return HXB_OK;
  });
}

void hxb_sim_free(hxb_sim* sim) { delete sim; }

int hxb_sim_num_layers(const hxb_sim* sim) {
  return sim ? sim->config.hierarchy.num_layers() : -1;
}

int hxb_sim_num_arms(const hxb_sim* sim) { return sim ? sim->config.arms.size() : -1; }

int64_t hxb_sim_horizon(const hxb_sim* sim) { return sim ? sim->config.horizon : -1; }

hxb_status hxb_sim_run(const hxb_sim* sim, uint64_t seed, hxb_trace** out) {
  if (!sim || !out) {
    set_error("hxb_sim_run: null argument");
    return HXB_ERROR;
  }
  *out = nullptr;
  return guarded([&] {
    hexb::Rng rng = hexb::Rng::stream(seed, {0});
    auto trace = new hxb_trace{
        hexb::run(sim->config.hierarchy, sim->config.arms, sim->config.horizon, rng)};
    *out = trace;
    return HXB_OK;
  });
}

void hxb_trace_free(hxb_trace* trace) { delete trace; }

int64_t hxb_trace_horizon(const hxb_trace* trace) { return trace ? trace->trace.horizon : -1; }

double hxb_trace_final_regret(const hxb_trace* trace) {
  return trace ? trace->trace.final_regret() : 0.0;
}

hxb_status hxb_trace_regret_curve(const hxb_trace* trace, double* buf, size_t len) {
  if (!trace || !buf) {
    set_error("hxb_trace_regret_curve: null argument");
    return HXB_ERROR;
  }
  const auto& curve = trace->trace.cumulative_regret;
  if (len < curve.size()) {
    set_error("hxb_trace_regret_curve: buffer needs horizon+1 entries");
    return HXB_ERROR;
  }
  std::memcpy(buf, curve.data(), curve.size() * sizeof(double));
  return HXB_OK;
}

hxb_status hxb_trace_selection_matrix(const hxb_trace* trace, int boundary, int64_t* buf,
                                      size_t len, int* rows, int* cols) {
  if (!trace || !rows || !cols) {
    set_error("hxb_trace_selection_matrix: null argument");
    return HXB_ERROR;
  }
  return guarded([&] {
    const auto& matrix = hexb::selection_matrix(trace->trace, boundary);
    *rows = static_cast<int>(matrix.size());
    *cols = static_cast<int>(matrix[0].size());
    if (!buf) return HXB_OK;
    if (len < static_cast<size_t>(*rows) * static_cast<size_t>(*cols)) {
      set_error("hxb_trace_selection_matrix: buffer too small");
      return HXB_ERROR;
    }
    size_t idx = 0;
    for (const auto& row : matrix) {
      for (std::int64_t v : row) buf[idx++] = v;
    }
    return HXB_OK;
  });
}

hxb_status hxb_trace_write_outputs(const hxb_trace* trace, const hxb_sim* sim, uint64_t seed,
                                   const char* out_dir) {
  if (!trace || !sim || !out_dir) {
    set_error("hxb_trace_write_outputs: null argument");
    return HXB_ERROR;
  }
  return guarded([&] {
    hexb::write_simulation_outputs(sim->config, trace->trace, seed, out_dir);
    return HXB_OK;
  });
}

hxb_status hxb_bounds_report(const char* config_json, char** json_out, char** table_out) {
  if (!config_json) {
    set_error("hxb_bounds_report: null config");
    return HXB_ERROR;
  }
  if (json_out) *json_out = nullptr;
  if (table_out) *table_out = nullptr;
  return guarded([&] {
    const hexb::BoundsQuery query = hexb::parse_bounds_config(config_json);
    const hexb::BoundsOutput output = hexb::evaluate_bounds_query(query);
    if (json_out) *json_out = dup_string(output.report.dump(2));
    if (table_out) *table_out = dup_string(output.table);
    return HXB_OK;
  });
}

hxb_status hxb_experiment_run(const char* config_json, const char* kind, const uint64_t* seed,
                              const char* scale, const char* out_dir, char** summary_json_out) {
  if (!config_json || !kind || !scale || !out_dir) {
    set_error("hxb_experiment_run: null argument");
    return HXB_ERROR;
  }
  if (summary_json_out) *summary_json_out = nullptr;
  return guarded([&] {
    const auto expected = hexb::experiment_kind_from_name(kind);
    if (!expected) throw hexb::ConfigError(std::string("unknown experiment kind \"") + kind + "\"");
    const auto parsed_scale = hexb::scale_from_name(scale);
    if (!parsed_scale) throw hexb::ConfigError(std::string("unknown scale \"") + scale + "\"");

    hexb::ExperimentConfig cfg = hexb::parse_experiment_config(config_json, expected);
    cfg = hexb::resolve_scale(cfg, *parsed_scale);
    const std::uint64_t effective_seed = seed ? *seed : cfg.seed.value_or(1);

    hexb::Json summary;
    switch (cfg.kind) {
      case hexb::ExperimentKind::ParamInflation: {
        const auto result = hexb::run_param_inflation(cfg, effective_seed);
        summary = hexb::write_param_inflation_outputs(cfg, result, effective_seed, out_dir);
        break;
      }
      case hexb::ExperimentKind::SelectionRanges: {
        const auto result = hexb::run_selection_ranges(cfg, effective_seed);
        summary = hexb::write_selection_ranges_outputs(cfg, result, effective_seed, out_dir);
        break;
      }
      case hexb::ExperimentKind::ExpertCount: {
        const auto result = hexb::run_expert_count(cfg, effective_seed);
        summary = hexb::write_expert_count_outputs(cfg, result, effective_seed, out_dir);
        break;
      }
    }
    if (summary_json_out) *summary_json_out = dup_string(summary.dump(2));
    return HXB_OK;
  });
}

}  // extern "C"
