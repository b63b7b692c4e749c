#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hexb {

// Evaluated closed-form regret bound. Existence constants the analysis does
// not quantify are listed by name in `unquantified`, never given numbers.
struct BoundReport {
  std::string kind;
  double coefficient = 0.0;          // multiplier of ln n
  std::optional<double> constant;    // additive term, where one is stated
  std::optional<int> i_star;         // threshold arm index (1-based)
  std::optional<double> alpha_star;  // max bottom-layer parameter
  // s_sets[m-2] = S_m as 1-based layer indices, for m in [2, K]
  std::vector<std::vector<int>> s_sets;
  std::vector<std::string> unquantified;
  std::vector<std::string> warnings;

  double value_at(double n) const;
};

// Gap conventions: `gaps` has K-1 entries, gaps[i] = Delta_{i+2} = mu_1 -
// mu_{i+2} with arms numbered from 1, best first; entries are positive and
// non-decreasing.

// Bernoulli KL divergence kl(p, q) with the 0*ln(0) = 0 convention. Returns
// +infinity when q in {0,1} and p != q.
double kl(double p, double q);

// UCB regret bound: sum over suboptimal arms of 2*alpha/Delta_i * ln n plus
// (K-1) * alpha/(alpha-2). Requires alpha > 2.
BoundReport fact1_bound(std::span<const double> gaps, double alpha, double n);

// Distribution-dependent lower bound for Bernoulli means (descending):
// (sum_i Delta_i / kl(mu_i, mu_1)) * ln n.
double fact2_lower_bound(std::span<const double> means, double n);

// Bad-expert construction lower-bound expression:
// (mu_1 - mu_K) / (2 kl(mu_K, mu_1)) * (R ln n - R^2 ln 4).
double theorem1_expression(double mu1, double muK, int layers, double n);

// Bottom-layer bound: alpha* = max of the bottom parameters; coefficient as
// in fact1 with alpha*, constant left unquantified.
BoundReport theorem3_bound(std::span<const double> gaps,
                           std::span<const double> bottom_alphas, double n);

// S_m: layers whose exploration pressure dominates at gap Delta_m.
// alpha1_min[k-1] is the minimal parameter of layer k; beta plays alpha_1^0.
// Returns 1-based layer indices; layer 1 is always a member (empty max = 0).
std::vector<int> compute_S_m(double beta, std::span<const double> alpha1_min,
                             std::span<const int> layer_sizes,
                             std::span<const double> gaps, int m);

// Threshold arm index i* in [2, K]; below it only the best bottom expert
// keeps pulling in the large-n regime.
int compute_i_star(double beta, std::span<const double> alpha1_min,
                   std::span<const int> layer_sizes, std::span<const double> gaps);

// One-good-expert-per-layer bound with its two branches on i*. The
// 1 < L_1 < ... < L_R < K regime is checked; violations warn, not error.
BoundReport theorem4_bound(double beta, std::span<const double> alpha1_min,
                           std::span<const int> layer_sizes,
                           std::span<const double> gaps, double n, double epsilon);

struct PullBounds {
  int arm = 0;  // 1-based, in [2, K]
  double upper = 0.0;
  double lower = 0.0;  // asymptotic, holds for large n only
};

// Deterministic-arm pull-count envelope for a standalone alpha-UCB:
// upper_i = alpha/(2 Delta_i^2) ln n + 1 (exact at every prefix),
// lower_i = alpha/(2 (Delta_i+eps)^2) ln n (asymptotic).
std::vector<PullBounds> lemma1_pull_bounds(double alpha, std::span<const double> gaps,
                                           double n, double epsilon);

}  // namespace hexb
