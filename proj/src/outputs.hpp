#pragma once

#include <filesystem>

#include "config.hpp"
#include "emit.hpp"
#include "experiments.hpp"

namespace hexb {

// File-set writers for the CLI commands. Every JSONL / CSV artifact is a
// deterministic function of (seed, config); only summary.json carries a
// wall-clock timestamp.

// regret_curve.csv, selection_matrix_layer*.csv, run.jsonl, regret_curve.svg
void write_simulation_outputs(const SimulationConfig& cfg, const RunTrace& trace,
                              std::uint64_t seed, const std::filesystem::path& dir);

// records.jsonl, table1.csv, figure_curves.csv, figure_r1_r2.svg, summary.json
Json write_param_inflation_outputs(const ExperimentConfig& cfg, const ParamInflationResult& result,
                                   std::uint64_t seed, const std::filesystem::path& dir);

// selection_matrix_layer*.csv, comparison.csv, records.jsonl, summary.json
Json write_selection_ranges_outputs(const ExperimentConfig& cfg,
                                    const SelectionRangesResult& result, std::uint64_t seed,
                                    const std::filesystem::path& dir);

// mi_ni.csv, table6.csv, records.jsonl, mi_ni.svg, summary.json
Json write_expert_count_outputs(const ExperimentConfig& cfg, const ExpertCountResult& result,
                                std::uint64_t seed, const std::filesystem::path& dir);

}  // namespace hexb
