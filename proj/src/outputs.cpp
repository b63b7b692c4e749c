#include "outputs.hpp"

#include <chrono>
#include <cmath>

namespace hexb {

namespace fs = std::filesystem;

namespace {

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json experiment_summary_base(const ExperimentConfig& cfg, std::uint64_t seed) {
  Json summary;
  summary["kind"] = experiment_kind_name(cfg.kind);
  summary["seed"] = seed;
  summary["config"] = experiment_config_json(cfg);
  summary["config_hash"] = config_hash(experiment_config_json(cfg));
  summary["generated_at"] = iso_timestamp();
  return summary;
}

}  // namespace

void write_simulation_outputs(const SimulationConfig& cfg, const RunTrace& trace,
                              std::uint64_t seed, const fs::path& dir) {
  write_text_file(dir / "regret_curve.csv", csv_regret_curve(trace.cumulative_regret));
  for (int k = 0; k <= trace.num_layers; ++k) {
    write_text_file(dir / ("selection_matrix_layer" + std::to_string(k) + ".csv"),
                    csv_selection_matrix(trace, k));
  }

  RunRecord record;
  record.seed = seed;
  record.config_hash = config_hash(simulation_config_json(cfg));
  record.horizon = trace.horizon;
  record.final_regret = trace.final_regret();
  record.counts_digest = counts_digest(trace);
  write_text_file(dir / "run.jsonl", jsonl_line(run_record_json(record)));

  Curve curve;
  curve.name = "pseudo-regret";
  curve.x.reserve(trace.cumulative_regret.size());
  curve.y = trace.cumulative_regret;
  for (std::size_t t = 0; t < curve.y.size(); ++t) curve.x.push_back(static_cast<double>(t));
  emit_plot({curve}, "round", "cumulative regret", dir / "regret_curve.svg");
}

Json write_param_inflation_outputs(const ExperimentConfig& cfg, const ParamInflationResult& result,
                                   std::uint64_t seed, const fs::path& dir) {
  std::string records;
  for (const ParamInflationRecord& r : result.records) {
    Json line;
    line["process"] = r.process;
    line["num_arms"] = r.num_arms;
    line["num_layers"] = r.num_layers;
    line["layer_sizes"] = r.layer_sizes;
    line["r1"] = r.r1;
    line["r2"] = r.r2;
    records += jsonl_line(line);
  }
  write_text_file(dir / "records.jsonl", records);

  std::string table = "distribution,times_r2_ge_r1,times_r2_lt_r1,proportion_r2_lt_r1\n";
  table += arm_kind_name(cfg.distribution) + "," + std::to_string(result.count_r2_ge_r1) + "," +
           std::to_string(result.count_r2_lt_r1) + "," + format_number(result.proportion_lt()) +
           "\n";
  write_text_file(dir / "table1.csv", table);

  std::string curves = "round,r1,r2\n";
  for (std::size_t t = 0; t < result.r1_curve.size(); ++t) {
    curves += std::to_string(t) + "," + format_number(result.r1_curve[t]) + "," +
              format_number(result.r2_curve[t]) + "\n";
  }
  write_text_file(dir / "figure_curves.csv", curves);

  Curve c1{"R_1", {}, result.r1_curve};
  Curve c2{"R_2", {}, result.r2_curve};
  for (std::size_t t = 0; t < result.r1_curve.size(); ++t) {
    c1.x.push_back(static_cast<double>(t));
    c2.x.push_back(static_cast<double>(t));
  }
  emit_plot({c1, c2}, "round", "cumulative regret", dir / "figure_r1_r2.svg");

  Json summary = experiment_summary_base(cfg, seed);
  summary["processes"] = static_cast<int>(result.records.size());
  summary["times_r2_ge_r1"] = result.count_r2_ge_r1;
  summary["times_r2_lt_r1"] = result.count_r2_lt_r1;
  summary["proportion_r2_lt_r1"] = result.proportion_lt();
  write_text_file(dir / "summary.json", summary.dump(2) + "\n");
  return summary;
}

Json write_selection_ranges_outputs(const ExperimentConfig& cfg,
                                    const SelectionRangesResult& result, std::uint64_t seed,
                                    const fs::path& dir) {
  for (int k = 0; k <= result.first_trace.num_layers; ++k) {
    write_text_file(dir / ("selection_matrix_layer" + std::to_string(k) + ".csv"),
                    csv_selection_matrix(result.first_trace, k));
  }
  write_text_file(dir / "regret_curve.csv",
                  csv_regret_curve(result.first_trace.cumulative_regret));

  const int bottom = result.first_trace.num_layers;
  std::string comparison = "strategy,budget";
  for (int i = 1; i <= result.arms.size(); ++i) comparison += ",arm_" + std::to_string(i);
  comparison += "\n";
  for (const SelectionComparisonRow& row : result.first_comparison) {
    comparison += "a_" + std::to_string(row.expert) + "^" + std::to_string(bottom) + "," +
                  std::to_string(row.budget);
    for (std::int64_t c : row.in_hierarchy) comparison += "," + std::to_string(c);
    comparison += "\n";
    comparison += "b_" + std::to_string(row.expert) + "^" + std::to_string(bottom) + "," +
                  std::to_string(row.budget);
    for (std::int64_t c : row.standalone) comparison += "," + std::to_string(c);
    comparison += "\n";
  }
  write_text_file(dir / "comparison.csv", comparison);

  std::string records;
  int share_wins = 0, band_wins = 0;
  for (const SelectionSeedRecord& r : result.records) {
    Json line;
    line["seed_index"] = r.seed_index;
    line["a1_arm1_share"] = r.a1_arm1_share;
    line["b1_arm1_share"] = r.b1_arm1_share;
    line["band_mass"] = r.band_mass;
    line["above_band_mass"] = r.above_band_mass;
    line["final_regret"] = r.final_regret;
    records += jsonl_line(line);
    if (r.a1_arm1_share > r.b1_arm1_share) ++share_wins;
    if (r.above_band_mass < r.band_mass) ++band_wins;
  }
  write_text_file(dir / "records.jsonl", records);

  Json summary = experiment_summary_base(cfg, seed);
  summary["seeds"] = static_cast<int>(result.records.size());
  summary["a1_share_exceeds_b1"] = share_wins;
  summary["band_concentration_holds"] = band_wins;
  write_text_file(dir / "summary.json", summary.dump(2) + "\n");
  return summary;
}

Json write_expert_count_outputs(const ExperimentConfig& cfg, const ExpertCountResult& result,
                                std::uint64_t seed, const fs::path& dir) {
  std::string curve = "i,m_i,n_i\n";
  std::string records;
  Curve mi{"M_i", {}, {}}, ni{"N_i", {}, {}};
  for (const ExpertCountRecord& r : result.records) {
    curve += std::to_string(r.i) + "," + format_number(r.m_i) + "," + format_number(r.n_i) + "\n";
    Json line;
    line["i"] = r.i;
    line["m_i"] = r.m_i;
    line["n_i"] = r.n_i;
    line["regrets"] = r.regrets;
    records += jsonl_line(line);
    mi.x.push_back(r.i);
    mi.y.push_back(r.m_i);
    ni.x.push_back(r.i);
    ni.y.push_back(r.n_i);
  }
  write_text_file(dir / "mi_ni.csv", curve);
  write_text_file(dir / "records.jsonl", records);
  emit_plot({mi, ni}, "number of experts L_1", "bound value / mean regret", dir / "mi_ni.svg");

  std::string table = "num_arms,p1,p2,difference\n";
  table += std::to_string(result.arms.size()) + "," + std::to_string(result.p1) + "," +
           std::to_string(result.p2) + "," + std::to_string(std::abs(result.p1 - result.p2)) +
           "\n";
  write_text_file(dir / "table6.csv", table);

  Json summary = experiment_summary_base(cfg, seed);
  summary["p1"] = result.p1;
  summary["p2"] = result.p2;
  summary["spearman_m_n"] = result.spearman;
  write_text_file(dir / "summary.json", summary.dump(2) + "\n");
  return summary;
}

}  // namespace hexb
