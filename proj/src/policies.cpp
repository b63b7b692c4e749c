#include "policies.hpp"

#include <cassert>
#include <cmath>

#include "errors.hpp"

namespace hexb {

std::string policy_kind_name(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::AlphaUCB: return "AlphaUCB";
    case PolicyKind::EpsilonGreedy: return "EpsilonGreedy";
    case PolicyKind::BadFixed: return "BadFixed";
    case PolicyKind::LeastPulls: return "LeastPulls";
  }
  return "?";
}

std::optional<PolicyKind> policy_kind_from_name(const std::string& name) {
  if (name == "AlphaUCB") return PolicyKind::AlphaUCB;
  if (name == "EpsilonGreedy") return PolicyKind::EpsilonGreedy;
  if (name == "BadFixed") return PolicyKind::BadFixed;
  if (name == "LeastPulls") return PolicyKind::LeastPulls;
  return std::nullopt;
}

void PolicySpec::validate() const {
  switch (kind) {
    case PolicyKind::AlphaUCB:
      if (!(alpha > 0.0)) throw ConfigError("AlphaUCB alpha must be > 0");
      break;
    case PolicyKind::EpsilonGreedy:
      if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw ConfigError("EpsilonGreedy epsilon must lie in [0,1]");
      }
      break;
    case PolicyKind::BadFixed:
      if (target < 0) throw ConfigError("BadFixed target must be a valid child index");
      break;
    case PolicyKind::LeastPulls:
      break;
  }
}

PolicyState new_state(int num_children) {
  if (num_children < 1) throw ConfigError("a decision point needs at least one child");
  PolicyState state;
  state.counts.assign(num_children, 0);
  state.sums.assign(num_children, 0.0);
  return state;
}

double alpha_ucb_index(double mean, double alpha, double log_t, std::int64_t count) {
  return mean + std::sqrt(alpha * log_t / (2.0 * static_cast<double>(count)));
}

namespace {

int select_alpha_ucb(const PolicySpec& spec, const PolicyState& state, std::int64_t t) {
  const int n = state.num_children();
  // unplayed children first, in index order (Algorithm-1 initialization,
  // extended to decision points that first act at a late round)
  for (int i = 0; i < n; ++i) {
    if (state.counts[i] == 0) return i;
  }
  const std::int64_t t_eff = spec.local_clock ? state.invocations + 1 : t;
  const double log_t = std::log(static_cast<double>(t_eff));
  int best = 0;
  double best_index = alpha_ucb_index(state.sums[0] / static_cast<double>(state.counts[0]),
                                      spec.alpha, log_t, state.counts[0]);
  for (int i = 1; i < n; ++i) {
    const double mean = state.sums[i] / static_cast<double>(state.counts[i]);
    const double index = alpha_ucb_index(mean, spec.alpha, log_t, state.counts[i]);
    if (index > best_index) {
      best_index = index;
      best = i;
    }
  }
  return best;
}

int select_epsilon_greedy(const PolicySpec& spec, const PolicyState& state, Rng& rng) {
  const int n = state.num_children();
  if (rng.bernoulli(spec.epsilon)) {
    return static_cast<int>(rng.uniform_int(0, n - 1));
  }
  // exploit: highest sample mean, unvisited children count as mean 0
  int best = 0;
  double best_mean = state.counts[0] > 0 ? state.sums[0] / static_cast<double>(state.counts[0]) : 0.0;
  for (int i = 1; i < n; ++i) {
    const double mean = state.counts[i] > 0 ? state.sums[i] / static_cast<double>(state.counts[i]) : 0.0;
    if (mean > best_mean) {
      best_mean = mean;
      best = i;
    }
  }
  return best;
}

int select_least_pulls(const PolicyState& state) {
  int best = 0;
  for (int i = 1; i < state.num_children(); ++i) {
    if (state.counts[i] < state.counts[best]) best = i;
  }
  return best;
}

}  // namespace

int select(const PolicySpec& spec, const PolicyState& state, std::int64_t t, Rng& rng) {
  assert(state.num_children() >= 1);
  assert(t >= 1);
  switch (spec.kind) {
    case PolicyKind::AlphaUCB:
      return select_alpha_ucb(spec, state, t);
    case PolicyKind::EpsilonGreedy:
      return select_epsilon_greedy(spec, state, rng);
    case PolicyKind::BadFixed:
      assert(spec.target < state.num_children());
      return spec.target;
    case PolicyKind::LeastPulls:
      return select_least_pulls(state);
  }
  return 0;
}

void update(PolicyState& state, int child, double reward) {
  if (child < 0 || child >= state.num_children()) {
    throw ConfigError("update: child index out of range");
  }
  if (!(reward >= 0.0 && reward <= 1.0)) {
    throw ConfigError("update: reward outside [0,1] violates the reward model");
  }
  state.counts[child] += 1;
  state.sums[child] += reward;
  state.invocations += 1;
}

}  // namespace hexb
