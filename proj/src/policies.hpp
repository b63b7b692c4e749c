#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rng.hpp"

namespace hexb {

enum class PolicyKind { AlphaUCB, EpsilonGreedy, BadFixed, LeastPulls };

std::string policy_kind_name(PolicyKind kind);
std::optional<PolicyKind> policy_kind_from_name(const std::string& name);

struct PolicySpec {
  PolicyKind kind = PolicyKind::AlphaUCB;
  double alpha = 0.0;        // AlphaUCB exploration parameter
  double epsilon = 0.0;      // EpsilonGreedy exploration probability
  int target = 0;            // BadFixed child, 0-based
  bool local_clock = false;  // AlphaUCB: use this decision point's own
                             // invocation count instead of the global round

  void validate() const;  // throws ConfigError
  // alpha <= 2 is allowed for simulation but the alpha/(alpha-2) constant
  // of the UCB regret bound is undefined there.
  bool low_alpha_flagged() const { return kind == PolicyKind::AlphaUCB && alpha <= 2.0; }
};

// Per-decision-point statistics over its children.
struct PolicyState {
  std::vector<std::int64_t> counts;  // T_i
  std::vector<double> sums;          // S_i
  std::int64_t invocations = 0;

  int num_children() const { return static_cast<int>(counts.size()); }
};

PolicyState new_state(int num_children);

// One decision. t is the global round index (>= 1). Returns a 0-based child.
int select(const PolicySpec& spec, const PolicyState& state, std::int64_t t, Rng& rng);

// Credit a reward in [0,1] to the chosen child.
void update(PolicyState& state, int child, double reward);

// UCB index: mean + sqrt(alpha * log_t / (2 * count)). Exposed for tests.
double alpha_ucb_index(double mean, double alpha, double log_t, std::int64_t count);

}  // namespace hexb
