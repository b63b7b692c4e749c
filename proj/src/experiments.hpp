#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "arms.hpp"
#include "hierarchy.hpp"

namespace hexb {

enum class ExperimentKind { ParamInflation, SelectionRanges, ExpertCount };
enum class Scale { Desk, Paper };

std::string experiment_kind_name(ExperimentKind kind);
std::optional<ExperimentKind> experiment_kind_from_name(const std::string& name);
std::string scale_name(Scale scale);
std::optional<Scale> scale_from_name(const std::string& name);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::ParamInflation;
  std::optional<std::uint64_t> seed;
  // zero-valued size fields are filled in by resolve_scale
  int processes = 0;
  int repeats = 0;
  std::int64_t horizon = 0;
  // ParamInflation
  ArmKind distribution = ArmKind::Bernoulli;
  double inflation_value = 1000000.0;
  // SelectionRanges / ExpertCount; absent means the built-in default
  std::optional<ArmSet> arms;
  std::optional<HierarchySpec> hierarchy;
  std::vector<int> standalone_experts;  // 1-based bottom experts to rerun standalone
  int num_arms = 0;                     // ExpertCount K
  int i_max = 0;
  int hierarchies_per_i = 0;
};

// Fill unset size fields with the defaults for the requested scale.
ExperimentConfig resolve_scale(ExperimentConfig cfg, Scale scale);

// Random hierarchy per the generation protocol: R ~ U{1..9}, beta ~ U(2,10),
// L_k ~ U{2..10}, every expert an alpha-UCB with alpha ~ U(2,10).
HierarchySpec generate_hierarchy(Rng& rng);
// Same protocol with R = 1 and L_1 fixed.
HierarchySpec generate_single_layer_hierarchy(int num_experts, Rng& rng);
// Replace every non-minimal UCB parameter in each layer with `value`.
HierarchySpec inflate_hierarchy(HierarchySpec spec, double value);

// Bundled two-layer worked example (beta 5.75, layer parameters 4.04..8.41,
// seven deterministic arms).
ArmSet selection_example_arms();
HierarchySpec selection_example_hierarchy();

// --- parameter inflation -----------------------------------------------------

struct ParamInflationRecord {
  int process = 0;
  int num_arms = 0;
  int num_layers = 0;
  std::vector<int> layer_sizes;
  double r1 = 0.0;
  double r2 = 0.0;
};

struct ParamInflationResult {
  std::vector<ParamInflationRecord> records;
  int count_r2_ge_r1 = 0;
  int count_r2_lt_r1 = 0;
  // mean regret curves of process 0, for figure-style output
  std::vector<double> r1_curve;
  std::vector<double> r2_curve;

  double proportion_lt() const {
    return records.empty() ? 0.0 : static_cast<double>(count_r2_lt_r1) / records.size();
  }
};

// One process on a fixed instance: estimate R_1 over the repeats, inflate
// every non-minimal parameter, estimate R_2 over the same reward streams
// (so a no-op inflation reproduces R_1 exactly). The curve pointers, when
// set, receive the mean regret curves of the two phases.
ParamInflationRecord inflation_process(const ArmSet& arms, const HierarchySpec& base,
                                       const ExperimentConfig& cfg, std::uint64_t seed,
                                       int process, std::vector<double>* r1_curve,
                                       std::vector<double>* r2_curve);

// Per process: generate an arm set and hierarchy, run inflation_process,
// tally the R_2 vs R_1 comparisons.
ParamInflationResult run_param_inflation(const ExperimentConfig& cfg, std::uint64_t seed);

// --- selection ranges --------------------------------------------------------

struct SelectionComparisonRow {
  int expert = 0;  // 1-based bottom expert index
  std::int64_t budget = 0;
  std::vector<std::int64_t> in_hierarchy;  // its row of the bottom pair-count matrix
  std::vector<std::int64_t> standalone;    // arm counts of the solo rerun
};

struct SelectionSeedRecord {
  int seed_index = 0;
  double a1_arm1_share = 0.0;  // expert 1's share of arm 1 inside the hierarchy
  double b1_arm1_share = 0.0;  // the same expert rerun standalone
  std::int64_t band_mass = 0;
  std::int64_t above_band_mass = 0;
  double final_regret = 0.0;
};

struct SelectionRangesResult {
  ArmSet arms = selection_example_arms();
  HierarchySpec hierarchy;
  std::int64_t horizon = 0;
  RunTrace first_trace;  // seed 0, used for the table outputs
  std::vector<SelectionComparisonRow> first_comparison;
  std::vector<SelectionSeedRecord> records;
};

// Diagonal band of a selector-by-child matrix: row j of `rows` covers the
// proportional column span [floor(j*cols/rows), ceil((j+1)*cols/rows) - 1].
// All indices 0-based.
std::pair<int, int> diagonal_band(int rows, int cols, int row);
std::int64_t band_mass(const std::vector<std::vector<std::int64_t>>& matrix, bool above_only);

SelectionRangesResult run_selection_ranges(const ExperimentConfig& cfg, std::uint64_t seed);

// --- expert count ------------------------------------------------------------

struct ExpertCountRecord {
  int i = 0;        // L_1
  double m_i = 0.0; // closed-form bound value at the horizon
  double n_i = 0.0; // mean simulated regret
  std::vector<double> regrets;
};

struct ExpertCountResult {
  ArmSet arms = selection_example_arms();
  std::int64_t horizon = 0;
  std::vector<ExpertCountRecord> records;
  int p1 = 0;  // argmin of m_i
  int p2 = 0;  // argmin of n_i
  double spearman = 0.0;
};

ExpertCountResult run_expert_count(const ExperimentConfig& cfg, std::uint64_t seed);

// Expected minimum of `count` i.i.d. U(2,10) draws: 8/(count+1) + 2.
double expected_min_uniform_2_10(int count);

// --- empirical probes for the reasonable/stable definitions -------------------

struct ProbeReport {
  std::vector<std::int64_t> grid;    // geometrically spaced horizons
  std::vector<double> observed;      // mean pulls of the probed child
  std::vector<double> reference;     // n/k line, or (1/kl) ln n target
  std::vector<double> gap;           // excess (reasonable) / deficit (stable)
  double fitted_constant = 0.0;      // max gap over the grid
  double slope = 0.0;                // least-squares slope of gap vs ln n
  double slope_tolerance = 0.0;
  bool pass = false;
};

// Does the policy pull the unique worst child at most n/k + C times?
ProbeReport probe_reasonable(const PolicySpec& policy, const ArmSet& arms, std::int64_t n,
                             int repeats, std::uint64_t seed);

// Does the designated child get at least (1/kl(mu_2, mu_1)) ln n - C pulls?
ProbeReport probe_stable(const PolicySpec& policy, const ArmSet& arms, int designated_child,
                         std::int64_t n, int repeats, std::uint64_t seed);

// Spearman rank correlation (average ranks on ties).
double spearman_rho(std::span<const double> xs, std::span<const double> ys);

}  // namespace hexb
