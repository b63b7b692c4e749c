#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arms.hpp"
#include "policies.hpp"

namespace hexb {

enum class ObservationMode { Shared, Local };

std::string observation_mode_name(ObservationMode mode);
std::optional<ObservationMode> observation_mode_from_name(const std::string& name);

// Layered decision structure: a top strategy selects a layer-1 expert, each
// selected expert selects one of the next layer, the layer-R expert pulls an
// arm. Boundary k (0..R) denotes the decision from layer k into layer k+1,
// with layer 0 the top strategy and layer R+1 the arm set.
struct HierarchySpec {
  PolicySpec top;
  std::vector<std::vector<PolicySpec>> layers;  // layers[k-1] holds layer k's experts
  ObservationMode observation_mode = ObservationMode::Shared;

  int num_layers() const { return static_cast<int>(layers.size()); }  // R
  int layer_size(int k) const { return static_cast<int>(layers[k - 1].size()); }  // L_k, 1-based
  // Number of children seen from boundary k given K arms.
  int children_at(int boundary, int num_arms) const;
  void validate(int num_arms) const;  // throws ConfigError
  // Names of flagged-but-allowed settings (e.g. UCB alpha <= 2).
  std::vector<std::string> warnings() const;
};

// Mutable per-run statistics. In Shared mode every expert in a layer reads
// one pooled state over the next layer's children; in Local mode each
// selector tracks only its own choices.
class EngineStates {
 public:
  EngineStates(const HierarchySpec& spec, int num_arms);

  const PolicyState& observed(int boundary, int selector) const;
  void credit(int boundary, int selector, int child, double reward);
  ObservationMode mode() const { return mode_; }

 private:
  ObservationMode mode_;
  std::vector<PolicyState> shared_;               // [boundary]
  std::vector<std::vector<PolicyState>> local_;   // [boundary][selector]
};

struct StepResult {
  std::vector<int> path;  // R+1 entries: layer-1 expert, ..., layer-R expert, arm (0-based)
  double reward = 0.0;
};

// Complete record of one simulated run.
struct RunTrace {
  std::int64_t horizon = 0;
  int num_layers = 0;  // R
  int num_arms = 0;
  // path[t*(R+1) + k] = child chosen at boundary k in round t+1
  std::vector<int> path;
  std::vector<double> rewards;  // one entry per round
  // pair_counts[k][selector][child]: selections across boundary k
  std::vector<std::vector<std::vector<std::int64_t>>> pair_counts;
  // boundary_reward_sums[k][child]: reward credited across boundary k
  std::vector<std::vector<double>> boundary_reward_sums;
  // cumulative_regret[t] = sum_{s<=t} (mu_1 - mu_{I_s}); index 0 is the baseline 0
  std::vector<double> cumulative_regret;

  int path_at(std::int64_t round, int boundary) const {  // round is 1-based
    return path[(round - 1) * (num_layers + 1) + boundary];
  }
  int arm_at(std::int64_t round) const { return path_at(round, num_layers); }
  // Column sums of pair_counts[boundary]: how often each child was selected.
  std::vector<std::int64_t> selection_counts(int boundary) const;
  std::vector<std::int64_t> arm_counts() const { return selection_counts(num_layers); }
  double final_regret() const { return cumulative_regret.back(); }
};

// Advance one round: select a path, pull the arm, credit the reward to every
// decision point on the path.
StepResult step(const HierarchySpec& spec, EngineStates& states, const ArmSet& arms,
                std::int64_t t, Rng& rng);

RunTrace run(const HierarchySpec& spec, const ArmSet& arms, std::int64_t horizon, Rng& rng);

// Recompute the cumulative pseudo-regret curve from the pull sequence.
std::vector<double> pseudo_regret(const RunTrace& trace, const ArmSet& arms);

// Selector-by-child count matrix for boundary k (0 = top strategy).
const std::vector<std::vector<std::int64_t>>& selection_matrix(const RunTrace& trace, int boundary);

struct CtnResult {
  bool holds = false;
  std::optional<std::int64_t> first_violation;
};

// Checks C(t,n) <= 2*alpha*ln(n)/delta_K^2 - 2*alpha*ln(t)/delta_K^2 for all
// 1 <= t <= n, where C(x,y) counts rounds in [x,y] whose top selection was
// not expert 1.
CtnResult check_ctn_condition(const RunTrace& trace, double alpha, double delta_k,
                              std::int64_t n);

}  // namespace hexb
