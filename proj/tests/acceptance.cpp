// Acceptance suite: end-to-end checks of the simulator, the calculators and
// the experiment harness, one printed pass/fail line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "arms.hpp"
#include "bounds.hpp"
#include "config.hpp"
#include "emit.hpp"
#include "experiments.hpp"
#include "hierarchy.hpp"
#include "outputs.hpp"
#include "policies.hpp"

using namespace hexb;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

PolicySpec ucb(double alpha) { return PolicySpec{PolicyKind::AlphaUCB, alpha}; }

PolicySpec bad(int target_1based) {
  PolicySpec spec{PolicyKind::BadFixed};
  spec.target = target_1based - 1;
  return spec;
}

// ---------------------------------------------------------------------------
// 1. Exactness of the deterministic pull-count envelope at every prefix.

Outcome criterion_lemma1_exactness() {
  const ArmSet arms = arm_set_from_means(ArmKind::Deterministic, {0.9, 0.6, 0.3});
  const std::int64_t n = 100000;
  std::int64_t violations = 0;
  for (double alpha : {2.5, 3.0, 5.0}) {
    HierarchySpec spec;
    spec.top = ucb(alpha);
    Rng rng = Rng::stream(101, {static_cast<std::uint64_t>(alpha * 10)});
    const RunTrace trace = run(spec, arms, n, rng);
    std::vector<std::int64_t> counts(arms.size(), 0);
    for (std::int64_t t = 1; t <= n; ++t) {
      counts[trace.arm_at(t)] += 1;
      const double log_t = std::log(static_cast<double>(t));
      for (int i = 2; i <= arms.size(); ++i) {
        const double g = arms.gap_of_arm(i);
        if (static_cast<double>(counts[i - 1]) > alpha / (2.0 * g * g) * log_t + 1.0) {
          ++violations;
        }
      }
    }
  }
  return {violations == 0, "violations=" + std::to_string(violations) +
                               " over 3 alphas x " + std::to_string(n) + " prefixes"};
}

// ---------------------------------------------------------------------------
// 2. The closed-form bounds bracket the measured regret of a plain UCB.

Outcome criterion_fact_bounds_bracket() {
  const ArmSet arms = arm_set_from_means(ArmKind::Bernoulli, {0.9, 0.5});
  const std::int64_t n = 10000;
  const int seeds = 100;
  double total = 0.0;
  for (int s = 0; s < seeds; ++s) {
    HierarchySpec spec;
    spec.top = ucb(3.0);
    Rng rng = Rng::stream(202, {static_cast<std::uint64_t>(s)});
    total += run(spec, arms, n, rng).final_regret();
  }
  const double mean = total / seeds;
  const double upper = fact1_bound(arms.gaps(), 3.0, static_cast<double>(n))
                           .value_at(static_cast<double>(n));
  const double lower = fact2_lower_bound(arms.means(), static_cast<double>(n));
  const bool pass = mean <= upper && mean >= 0.5 * lower;
  return {pass, "mean=" + fmt(mean) + " upper=" + fmt(upper) + " half-lower=" +
                    fmt(0.5 * lower)};
}

// ---------------------------------------------------------------------------
// 3. Desk-scale parameter-inflation tally.

Outcome criterion_param_inflation() {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::ParamInflation;
  cfg.distribution = ArmKind::Bernoulli;
  cfg.processes = 100;
  cfg.repeats = 20;
  cfg.horizon = 10000;
  const ParamInflationResult result = run_param_inflation(cfg, 1);
  const double proportion = result.proportion_lt();
  return {proportion <= 0.10, "r2<r1 in " + std::to_string(result.count_r2_lt_r1) + "/100 (" +
                                  fmt(100.0 * proportion) + "%)"};
}

// ---------------------------------------------------------------------------
// 4. Selection-range concentration on the bundled two-layer example.

Outcome criterion_selection_ranges() {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::SelectionRanges;
  cfg.processes = 20;
  cfg.horizon = 10000;
  const SelectionRangesResult result = run_selection_ranges(cfg, 1);
  int both = 0;
  for (const SelectionSeedRecord& r : result.records) {
    if (r.a1_arm1_share > r.b1_arm1_share && r.above_band_mass < r.band_mass) ++both;
  }
  const SelectionSeedRecord& first = result.records.front();
  return {both >= 16, std::to_string(both) + "/20 seeds (a1 share " + fmt(first.a1_arm1_share) +
                          " vs solo " + fmt(first.b1_arm1_share) + ", band " +
                          std::to_string(first.band_mass) + " vs above " +
                          std::to_string(first.above_band_mass) + ")"};
}

// ---------------------------------------------------------------------------
// 5. The fixed-target construction makes regret grow with depth.

Outcome criterion_bad_expert_depth() {
  const ArmSet arms = arm_set_from_means(ArmKind::Bernoulli, {0.9, 0.6, 0.3});
  const std::int64_t n = 10000;
  const int seeds = 50;
  std::vector<double> mean_regret;
  for (int depth = 1; depth <= 5; ++depth) {
    double total = 0.0;
    for (int s = 0; s < seeds; ++s) {
      HierarchySpec spec;
      spec.top = ucb(3.0);
      // middle layers steer to the third expert, the bottom to the worst arm
      spec.layers.assign(depth, {ucb(3.0), bad(3), bad(3)});
      Rng rng = Rng::stream(505, {static_cast<std::uint64_t>(depth),
                                  static_cast<std::uint64_t>(s)});
      total += run(spec, arms, n, rng).final_regret();
    }
    mean_regret.push_back(total / seeds);
  }
  bool increasing = true;
  for (std::size_t i = 1; i < mean_regret.size(); ++i) {
    if (!(mean_regret[i] > mean_regret[i - 1])) increasing = false;
  }
  const bool doubled = mean_regret.back() >= 2.0 * mean_regret.front();
  std::string curve;
  for (double v : mean_regret) curve += fmt(v) + " ";
  return {increasing && doubled, "mean regret by depth: " + curve};
}

// ---------------------------------------------------------------------------
// 6. Desk-scale expert-count comparison of the bound and the simulation.

Outcome criterion_expert_count() {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::ExpertCount;
  cfg.num_arms = 100;
  cfg.i_max = 30;
  cfg.hierarchies_per_i = 20;
  cfg.horizon = 5000;
  const ExpertCountResult result = run_expert_count(cfg, 1);
  const int diff = std::abs(result.p1 - result.p2);
  const bool pass = diff <= 8 && result.spearman > 0.3;
  return {pass, "p1=" + std::to_string(result.p1) + " p2=" + std::to_string(result.p2) +
                    " |diff|=" + std::to_string(diff) + " spearman=" + fmt(result.spearman)};
}

// ---------------------------------------------------------------------------
// 7. Calculator oracles: brute-force i*, S_m membership, high-precision kl.

double alpha_sup_oracle(double beta, const std::vector<double>& alpha1, int sup) {
  return sup == 0 ? beta : alpha1[sup - 1];
}

std::vector<int> s_m_oracle(double beta, const std::vector<double>& alpha1,
                            const std::vector<int>& sizes, const std::vector<double>& gaps,
                            int m) {
  const int r = static_cast<int>(sizes.size());
  const int k_arms = static_cast<int>(gaps.size()) + 1;
  const double dm = gaps[m - 2];
  const double dk = gaps[k_arms - 2];
  std::vector<int> out;
  for (int k = 1; k <= r; ++k) {
    double best = 0.0;
    for (int j = 1; j < k; ++j) {
      best = std::max(best,
                      (sizes[j - 1] - 1) * alpha_sup_oracle(beta, alpha1, j - 1) / (dk * dk));
    }
    if ((sizes[k - 1] - 1) * alpha_sup_oracle(beta, alpha1, k - 1) / (dm * dm) >= best) {
      out.push_back(k);
    }
  }
  return out;
}

int i_star_oracle(double beta, const std::vector<double>& alpha1, const std::vector<int>& sizes,
                  const std::vector<double>& gaps) {
  const int k_arms = static_cast<int>(gaps.size()) + 1;
  const double a_bottom = alpha1.back();
  for (int i = 2; i <= k_arms; ++i) {
    const double di = gaps[i - 2];
    double lhs = (k_arms - i) * a_bottom / (di * di);
    for (int l = i + 1; l <= k_arms; ++l) lhs -= a_bottom / (gaps[l - 2] * gaps[l - 2]);
    double rhs = 0.0;
    for (int k : s_m_oracle(beta, alpha1, sizes, gaps, i)) {
      rhs += (sizes[k - 1] - 1) * alpha_sup_oracle(beta, alpha1, k - 1);
    }
    if (lhs <= rhs / (di * di)) return i;
  }
  return k_arms;
}

Outcome criterion_calculator_oracles() {
  Rng rng(707);
  int i_star_mismatches = 0;
  int s_m_failures = 0;
  for (int it = 0; it < 1000; ++it) {
    const int r = static_cast<int>(rng.uniform_int(1, 5));
    const int k_arms = static_cast<int>(rng.uniform_int(2, 12));
    std::vector<double> means;
    double m = rng.uniform(0.5, 0.99);
    means.push_back(m);
    for (int i = 1; i < k_arms; ++i) {
      m -= rng.uniform(0.001, 0.4 / k_arms);
      means.push_back(m);
    }
    std::vector<double> gaps;
    for (int i = 1; i < k_arms; ++i) gaps.push_back(means[0] - means[i]);
    std::vector<double> alpha1;
    std::vector<int> sizes;
    for (int k = 0; k < r; ++k) {
      alpha1.push_back(rng.uniform(2.0, 10.0));
      sizes.push_back(static_cast<int>(rng.uniform_int(1, 12)));
    }
    const double beta = rng.uniform(2.0, 10.0);
    if (compute_i_star(beta, alpha1, sizes, gaps) != i_star_oracle(beta, alpha1, sizes, gaps)) {
      ++i_star_mismatches;
    }
    for (int mm = 2; mm <= k_arms; ++mm) {
      const std::vector<int> members = compute_S_m(beta, alpha1, sizes, gaps, mm);
      if (members.empty() || members.front() != 1) ++s_m_failures;
      if (members != s_m_oracle(beta, alpha1, sizes, gaps, mm)) ++s_m_failures;
    }
  }

  int kl_failures = 0;
  int points = 0;
  for (int pi = 0; pi <= 10 && points < 100; ++pi) {
    for (int qi = 1; qi <= 9 && points < 100; ++qi) {
      const double p = pi / 10.0;
      const double q = qi / 10.0;
      long double expected = 0.0L;
      if (p > 0.0) {
        expected += static_cast<long double>(p) *
                    (std::log(static_cast<long double>(p)) - std::log(static_cast<long double>(q)));
      }
      if (p < 1.0) {
        expected += static_cast<long double>(1.0 - p) *
                    (std::log(static_cast<long double>(1.0 - p)) -
                     std::log(static_cast<long double>(1.0 - q)));
      }
      if (std::abs(kl(p, q) - static_cast<double>(expected)) >= 1e-12) ++kl_failures;
      ++points;
    }
  }
  const bool pass = i_star_mismatches == 0 && s_m_failures == 0 && kl_failures == 0;
  return {pass, "i* mismatches=" + std::to_string(i_star_mismatches) + " S_m failures=" +
                    std::to_string(s_m_failures) + " kl failures=" +
                    std::to_string(kl_failures) + "/" + std::to_string(points)};
}

// ---------------------------------------------------------------------------
// 8. Conservation across a battery of configurations.

Outcome criterion_conservation() {
  struct Case {
    ArmSet arms;
    HierarchySpec spec;
  };
  std::vector<Case> cases;

  {
    Case flat{arm_set_from_means(ArmKind::Bernoulli, {0.9, 0.5, 0.2}), {}};
    flat.spec.top = ucb(3.0);
    cases.push_back(flat);
  }
  {
    Case mixed{ArmSet::create({{ArmKind::Beta, 0.0, 9.0, 1.0},
                               {ArmKind::Beta, 0.0, 5.0, 5.0},
                               {ArmKind::Beta, 0.0, 1.0, 9.0}}),
               {}};
    mixed.spec.top = ucb(2.5);
    mixed.spec.layers = {{ucb(3.0), PolicySpec{PolicyKind::EpsilonGreedy, 0.0, 0.2},
                          PolicySpec{PolicyKind::LeastPulls}}};
    cases.push_back(mixed);
  }
  {
    Case local{ArmSet::create({{ArmKind::BinomialNormalized, 0.8, 0.0, 0.0, 7},
                               {ArmKind::BinomialNormalized, 0.5, 0.0, 0.0, 12},
                               {ArmKind::BinomialNormalized, 0.2, 0.0, 0.0, 4}}),
               {}};
    local.spec.top = ucb(4.0);
    local.spec.observation_mode = ObservationMode::Local;
    local.spec.layers = {{ucb(3.0), bad(2)}, {ucb(2.5), ucb(6.0), bad(3)}};
    cases.push_back(local);
  }
  {
    Case deep{arm_set_from_means(ArmKind::Deterministic, {0.94, 0.93, 0.54, 0.42}), {}};
    deep.spec.top = ucb(5.75);
    deep.spec.layers = {{ucb(4.04), ucb(5.33)}, {ucb(2.33), ucb(5.22), ucb(7.29)},
                        {ucb(3.0), ucb(4.0), ucb(5.0), ucb(6.0)}};
    cases.push_back(deep);
  }

  const std::int64_t n = 2000;
  std::int64_t checks = 0, failures = 0;
  for (std::size_t c = 0; c < cases.size(); ++c) {
    for (int s = 0; s < 3; ++s) {
      Rng rng = Rng::stream(808, {c, static_cast<std::uint64_t>(s)});
      const RunTrace trace = run(cases[c].spec, cases[c].arms, n, rng);
      const int r = trace.num_layers;

      std::vector<std::vector<std::int64_t>> counts(r + 1);
      std::vector<std::vector<double>> rewards(r + 1);
      for (int k = 0; k <= r; ++k) {
        counts[k].assign(trace.pair_counts[k][0].size(), 0);
        rewards[k].assign(trace.pair_counts[k][0].size(), 0.0);
      }
      for (std::int64_t t = 1; t <= n; ++t) {
        for (int k = 0; k <= r; ++k) {
          counts[k][trace.path_at(t, k)] += 1;
          rewards[k][trace.path_at(t, k)] += trace.rewards[t - 1];
        }
        // prefix conservation at every boundary
        for (int k = 0; k <= r; ++k) {
          std::int64_t total = 0;
          for (std::int64_t v : counts[k]) total += v;
          ++checks;
          if (total != t) ++failures;
        }
      }
      // final tallies and reward propagation (same value at all R+1 points)
      for (int k = 0; k <= r; ++k) {
        ++checks;
        if (trace.selection_counts(k) != counts[k]) ++failures;
        for (std::size_t i = 0; i < rewards[k].size(); ++i) {
          ++checks;
          if (std::abs(trace.boundary_reward_sums[k][i] - rewards[k][i]) > 1e-9) ++failures;
        }
      }
    }
  }
  return {failures == 0, std::to_string(checks) + " checks, " + std::to_string(failures) +
                             " failures"};
}

// ---------------------------------------------------------------------------
// 9. Byte-identical artifacts for identical (seed, config) pairs.

bool same_file(const std::filesystem::path& a, const std::filesystem::path& b) {
  return read_text_file(a) == read_text_file(b);
}

Outcome criterion_reproducibility() {
  namespace fs = std::filesystem;
  const fs::path base = "acceptance_out";
  fs::remove_all(base);
  int compared = 0, mismatched = 0;
  auto compare = [&](const fs::path& a, const fs::path& b, const std::string& name) {
    ++compared;
    if (!same_file(a / name, b / name)) ++mismatched;
  };

  {
    SimulationConfig cfg;
    cfg.arms = selection_example_arms();
    cfg.hierarchy = selection_example_hierarchy();
    cfg.horizon = 10000;
    for (const char* dir : {"sim_run1", "sim_run2"}) {
      Rng rng = Rng::stream(7, {0});
      const RunTrace trace = run(cfg.hierarchy, cfg.arms, cfg.horizon, rng);
      write_simulation_outputs(cfg, trace, 7, base / dir);
    }
    compare(base / "sim_run1", base / "sim_run2", "run.jsonl");
    compare(base / "sim_run1", base / "sim_run2", "regret_curve.csv");
    for (int k = 0; k <= 2; ++k) {
      compare(base / "sim_run1", base / "sim_run2",
              "selection_matrix_layer" + std::to_string(k) + ".csv");
    }
  }

  {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::ParamInflation;
    cfg.distribution = ArmKind::Bernoulli;
    cfg.processes = 4;
    cfg.repeats = 2;
    cfg.horizon = 1000;
    for (const char* dir : {"exp_run1", "exp_run2"}) {
      const ParamInflationResult result = run_param_inflation(cfg, 3);
      write_param_inflation_outputs(cfg, result, 3, base / dir);
    }
    compare(base / "exp_run1", base / "exp_run2", "records.jsonl");
    compare(base / "exp_run1", base / "exp_run2", "table1.csv");
    compare(base / "exp_run1", base / "exp_run2", "figure_curves.csv");
  }

  {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::ExpertCount;
    cfg.num_arms = 20;
    cfg.i_max = 5;
    cfg.hierarchies_per_i = 2;
    cfg.horizon = 500;
    for (const char* dir : {"ec_run1", "ec_run2"}) {
      const ExpertCountResult result = run_expert_count(cfg, 11);
      write_expert_count_outputs(cfg, result, 11, base / dir);
    }
    compare(base / "ec_run1", base / "ec_run2", "records.jsonl");
    compare(base / "ec_run1", base / "ec_run2", "mi_ni.csv");
    compare(base / "ec_run1", base / "ec_run2", "table6.csv");
  }

  return {mismatched == 0, std::to_string(compared) + " file pairs compared, " +
                               std::to_string(mismatched) + " mismatched"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> body;
    double time_limit_s;  // 0 = unlimited
  };
  const std::vector<Criterion> criteria = {
      {1, "deterministic pull-count envelope exact at every prefix", criterion_lemma1_exactness, 10},
      {2, "closed-form bounds bracket measured ucb regret", criterion_fact_bounds_bracket, 30},
      {3, "parameter inflation rarely lowers regret (desk scale)", criterion_param_inflation, 900},
      {4, "selection ranges concentrate on the diagonal", criterion_selection_ranges, 0},
      {5, "fixed-target chains grow regret with depth", criterion_bad_expert_depth, 0},
      {6, "expert-count bound tracks the simulation (desk scale)", criterion_expert_count, 1200},
      {7, "calculators agree with brute-force oracles", criterion_calculator_oracles, 0},
      {8, "selection counts and rewards are conserved", criterion_conservation, 0},
      {9, "identical seed and config give byte-identical artifacts", criterion_reproducibility, 0},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criterion.body();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (criterion.time_limit_s > 0 && seconds > criterion.time_limit_s) {
      outcome.pass = false;
      outcome.detail += " [exceeded " + fmt(criterion.time_limit_s) + "s budget]";
    }
    if (!outcome.pass) ++failures;
    std::printf("[%s] criterion %d: %s — %s (%.1fs)\n", outcome.pass ? "PASS" : "FAIL",
                criterion.id, criterion.name, outcome.detail.c_str(), seconds);
    std::fflush(stdout);
  }
  if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
  return failures;
}
