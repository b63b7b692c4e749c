#include "hierarchy.hpp"

#include <cassert>
#include <cmath>

#include "errors.hpp"

namespace hexb {

std::string observation_mode_name(ObservationMode mode) {
  return mode == ObservationMode::Shared ? "Shared" : "Local";
}

std::optional<ObservationMode> observation_mode_from_name(const std::string& name) {
  if (name == "Shared") return ObservationMode::Shared;
  if (name == "Local") return ObservationMode::Local;
  return std::nullopt;
}

int HierarchySpec::children_at(int boundary, int num_arms) const {
  return boundary == num_layers() ? num_arms : static_cast<int>(layers[boundary].size());
}

void HierarchySpec::validate(int num_arms) const {
  top.validate();
  const int r = num_layers();
  for (int k = 0; k < r; ++k) {
    if (layers[k].empty()) throw ConfigError("every layer needs at least one expert");
    for (const PolicySpec& expert : layers[k]) expert.validate();
  }
  // BadFixed targets must index into the next layer (or the arm set)
  auto check_target = [&](const PolicySpec& spec, int boundary, const std::string& where) {
    if (spec.kind != PolicyKind::BadFixed) return;
    const int n = children_at(boundary, num_arms);
    if (spec.target < 0 || spec.target >= n) {
      throw ConfigError(where + ": BadFixed target out of range");
    }
  };
  check_target(top, 0, "top");
  for (int k = 0; k < r; ++k) {
    for (std::size_t j = 0; j < layers[k].size(); ++j) {
      check_target(layers[k][j], k + 1,
                   "layer " + std::to_string(k + 1) + " expert " + std::to_string(j + 1));
    }
  }
}

std::vector<std::string> HierarchySpec::warnings() const {
  std::vector<std::string> out;
  if (top.low_alpha_flagged()) {
    out.push_back("top: AlphaUCB alpha <= 2, the alpha/(alpha-2) bound constant is undefined");
  }
  for (int k = 0; k < num_layers(); ++k) {
    for (std::size_t j = 0; j < layers[k].size(); ++j) {
      if (layers[k][j].low_alpha_flagged()) {
        out.push_back("layer " + std::to_string(k + 1) + " expert " + std::to_string(j + 1) +
                      ": AlphaUCB alpha <= 2, the alpha/(alpha-2) bound constant is undefined");
      }
    }
  }
  return out;
}

EngineStates::EngineStates(const HierarchySpec& spec, int num_arms)
    : mode_(spec.observation_mode) {
  const int r = spec.num_layers();
  if (mode_ == ObservationMode::Shared) {
    shared_.reserve(r + 1);
    for (int k = 0; k <= r; ++k) shared_.push_back(new_state(spec.children_at(k, num_arms)));
  } else {
    local_.resize(r + 1);
    for (int k = 0; k <= r; ++k) {
      const int selectors = k == 0 ? 1 : static_cast<int>(spec.layers[k - 1].size());
      local_[k].reserve(selectors);
      for (int j = 0; j < selectors; ++j) {
        local_[k].push_back(new_state(spec.children_at(k, num_arms)));
      }
    }
  }
}

const PolicyState& EngineStates::observed(int boundary, int selector) const {
  return mode_ == ObservationMode::Shared ? shared_[boundary] : local_[boundary][selector];
}

void EngineStates::credit(int boundary, int selector, int child, double reward) {
  PolicyState& state =
      mode_ == ObservationMode::Shared ? shared_[boundary] : local_[boundary][selector];
  update(state, child, reward);
}

StepResult step(const HierarchySpec& spec, EngineStates& states, const ArmSet& arms,
                std::int64_t t, Rng& rng) {
  const int r = spec.num_layers();
  StepResult result;
  result.path.resize(r + 1);
  int selector = 0;
  for (int k = 0; k <= r; ++k) {
    const PolicySpec& policy = k == 0 ? spec.top : spec.layers[k - 1][selector];
    const int child = select(policy, states.observed(k, selector), t, rng);
    result.path[k] = child;
    selector = child;
  }
  result.reward = sample_arm(arms.arm(result.path[r]), rng);
  // the same reward is credited to all R+1 decision points on the path
  selector = 0;
  for (int k = 0; k <= r; ++k) {
    states.credit(k, selector, result.path[k], result.reward);
    selector = result.path[k];
  }
  return result;
}

RunTrace run(const HierarchySpec& spec, const ArmSet& arms, std::int64_t horizon, Rng& rng) {
  if (horizon < 1) throw ConfigError("horizon must be >= 1");
  spec.validate(arms.size());
  const int r = spec.num_layers();
  const int k_arms = arms.size();

  RunTrace trace;
  trace.horizon = horizon;
  trace.num_layers = r;
  trace.num_arms = k_arms;
  trace.path.reserve(static_cast<std::size_t>(horizon) * (r + 1));
  trace.rewards.reserve(horizon);
  trace.pair_counts.resize(r + 1);
  trace.boundary_reward_sums.resize(r + 1);
  for (int k = 0; k <= r; ++k) {
    const int selectors = k == 0 ? 1 : spec.layer_size(k);
    const int children = spec.children_at(k, k_arms);
    trace.pair_counts[k].assign(selectors, std::vector<std::int64_t>(children, 0));
    trace.boundary_reward_sums[k].assign(children, 0.0);
  }
  trace.cumulative_regret.reserve(horizon + 1);
  trace.cumulative_regret.push_back(0.0);

  EngineStates states(spec, k_arms);
  double regret = 0.0;
  for (std::int64_t t = 1; t <= horizon; ++t) {
    const StepResult s = step(spec, states, arms, t, rng);
    trace.path.insert(trace.path.end(), s.path.begin(), s.path.end());
    trace.rewards.push_back(s.reward);
    int selector = 0;
    for (int k = 0; k <= r; ++k) {
      trace.pair_counts[k][selector][s.path[k]] += 1;
      trace.boundary_reward_sums[k][s.path[k]] += s.reward;
      selector = s.path[k];
    }
    regret += arms.mean(0) - arms.mean(s.path[r]);
    trace.cumulative_regret.push_back(regret);
  }
  return trace;
}

std::vector<std::int64_t> RunTrace::selection_counts(int boundary) const {
  const auto& matrix = pair_counts[boundary];
  std::vector<std::int64_t> out(matrix[0].size(), 0);
  for (const auto& row : matrix) {
    for (std::size_t c = 0; c < row.size(); ++c) out[c] += row[c];
  }
  return out;
}

std::vector<double> pseudo_regret(const RunTrace& trace, const ArmSet& arms) {
  std::vector<double> curve;
  curve.reserve(trace.horizon + 1);
  curve.push_back(0.0);
  double total = 0.0;
  for (std::int64_t t = 1; t <= trace.horizon; ++t) {
    total += arms.mean(0) - arms.mean(trace.arm_at(t));
    curve.push_back(total);
  }
  return curve;
}

const std::vector<std::vector<std::int64_t>>& selection_matrix(const RunTrace& trace,
                                                               int boundary) {
  if (boundary < 0 || boundary > trace.num_layers) {
    throw ConfigError("selection_matrix: layer out of range");
  }
  return trace.pair_counts[boundary];
}

CtnResult check_ctn_condition(const RunTrace& trace, double alpha, double delta_k,
                              std::int64_t n) {
  if (trace.num_layers < 1) throw ConfigError("check_ctn_condition needs R >= 1");
  if (n < 1 || n > trace.horizon) throw ConfigError("check_ctn_condition: n out of range");
  // C(t,n) via suffix counts of rounds where the top did not pick expert 1
  std::vector<std::int64_t> suffix(n + 2, 0);
  for (std::int64_t t = n; t >= 1; --t) {
    suffix[t] = suffix[t + 1] + (trace.path_at(t, 0) != 0 ? 1 : 0);
  }
  const double scale = 2.0 * alpha / (delta_k * delta_k);
  const double log_n = std::log(static_cast<double>(n));
  CtnResult result;
  result.holds = true;
  for (std::int64_t t = 1; t <= n; ++t) {
    const double bound = scale * (log_n - std::log(static_cast<double>(t)));
    if (static_cast<double>(suffix[t]) > bound) {
      result.holds = false;
      result.first_violation = t;
      break;
    }
  }
  return result;
}

}  // namespace hexb
