#include "bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "errors.hpp"

namespace hexb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double gap_at(std::span<const double> gaps, int arm) {  // arm is 1-based, >= 2
  return gaps[arm - 2];
}

void check_gaps(std::span<const double> gaps) {
  if (gaps.empty()) throw ConfigError("need at least one suboptimality gap (K >= 2)");
  for (double g : gaps) {
    if (!(g > 0.0)) throw ConfigError("suboptimality gaps must be positive");
  }
}

// alpha_1^{k-1} with alpha_1^0 = beta; `sup` is the superscript.
double alpha_sup(double beta, std::span<const double> alpha1_min, int sup) {
  return sup == 0 ? beta : alpha1_min[sup - 1];
}

}  // namespace

double BoundReport::value_at(double n) const {
  if (!(n >= 1.0)) throw ConfigError("bound evaluation needs n >= 1");
  return coefficient * std::log(n) + constant.value_or(0.0);
}

double kl(double p, double q) {
  if (!(p >= 0.0 && p <= 1.0) || !(q >= 0.0 && q <= 1.0)) {
    throw ConfigError("kl arguments must lie in [0,1]");
  }
  if (q == 0.0 || q == 1.0) return p == q ? 0.0 : kInf;
  double out = 0.0;
  if (p > 0.0) out += p * std::log(p / q);
  if (p < 1.0) out += (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
  return out;
}

BoundReport fact1_bound(std::span<const double> gaps, double alpha, double n) {
  check_gaps(gaps);
  if (!(alpha > 2.0)) {
    throw ConfigError("fact1_bound: alpha/(alpha-2) is undefined for alpha <= 2");
  }
  if (!(n >= 1.0)) throw ConfigError("fact1_bound: n must be >= 1");
  BoundReport report;
  report.kind = "fact1";
  for (double g : gaps) report.coefficient += 2.0 * alpha / g;
  report.constant = static_cast<double>(gaps.size()) * alpha / (alpha - 2.0);
  return report;
}

double fact2_lower_bound(std::span<const double> means, double n) {
  if (means.size() < 2) throw ConfigError("fact2_lower_bound: need K >= 2 means");
  if (!(n >= 2.0)) throw ConfigError("fact2_lower_bound: n must be >= 2");
  const double mu1 = means[0];
  if (!(mu1 > 0.0 && mu1 < 1.0)) {
    throw ConfigError("fact2_lower_bound: kl diverges for mu_1 in {0,1}");
  }
  double coefficient = 0.0;
  for (std::size_t i = 1; i < means.size(); ++i) {
    if (!(means[i] > 0.0 && means[i] < 1.0)) {
      throw ConfigError("fact2_lower_bound: Bernoulli means must lie in (0,1)");
    }
    coefficient += (mu1 - means[i]) / kl(means[i], mu1);
  }
  return coefficient * std::log(n);
}

double theorem1_expression(double mu1, double muK, int layers, double n) {
  if (!(muK > 0.0 && muK < mu1 && mu1 < 1.0)) {
    throw ConfigError("theorem1_expression: need 0 < mu_K < mu_1 < 1");
  }
  if (layers < 1) throw ConfigError("theorem1_expression: need R >= 1");
  const double divergence = kl(muK, mu1);
  const double r = static_cast<double>(layers);
  return (mu1 - muK) / (2.0 * divergence) * (r * std::log(n) - r * r * std::log(4.0));
}

BoundReport theorem3_bound(std::span<const double> gaps,
                           std::span<const double> bottom_alphas, double n) {
  check_gaps(gaps);
  if (bottom_alphas.empty()) throw ConfigError("theorem3_bound: bottom layer is empty");
  if (!(n >= 1.0)) throw ConfigError("theorem3_bound: n must be >= 1");
  BoundReport report;
  report.kind = "theorem3";
  report.alpha_star = *std::max_element(bottom_alphas.begin(), bottom_alphas.end());
  for (double g : gaps) report.coefficient += 2.0 * *report.alpha_star / g;
  report.unquantified.push_back("C_alpha_star");
  return report;
}

std::vector<int> compute_S_m(double beta, std::span<const double> alpha1_min,
                             std::span<const int> layer_sizes,
                             std::span<const double> gaps, int m) {
  check_gaps(gaps);
  const int r = static_cast<int>(layer_sizes.size());
  const int k_arms = static_cast<int>(gaps.size()) + 1;
  if (static_cast<int>(alpha1_min.size()) != r) {
    throw ConfigError("compute_S_m: one minimal parameter per layer required");
  }
  if (m < 2 || m > k_arms) throw ConfigError("compute_S_m: m must lie in [2, K]");
  const double delta_m = gap_at(gaps, m);
  const double delta_k = gap_at(gaps, k_arms);
  std::vector<int> members;
  double running_max = 0.0;  // empty max over predecessors
  for (int k = 1; k <= r; ++k) {
    const double pressure = (layer_sizes[k - 1] - 1) * alpha_sup(beta, alpha1_min, k - 1);
    if (pressure / (delta_m * delta_m) >= running_max) members.push_back(k);
    running_max = std::max(running_max, pressure / (delta_k * delta_k));
  }
  return members;
}

int compute_i_star(double beta, std::span<const double> alpha1_min,
                   std::span<const int> layer_sizes, std::span<const double> gaps) {
  check_gaps(gaps);
  if (alpha1_min.empty()) throw ConfigError("compute_i_star: need R >= 1 layers");
  const int k_arms = static_cast<int>(gaps.size()) + 1;
  const double alpha_bottom = alpha1_min.back();
  // suffix[i] = sum_{l=i+1}^{K} alpha_bottom / Delta_l^2
  std::vector<double> suffix(k_arms + 2, 0.0);
  for (int l = k_arms; l >= 2; --l) {
    const double g = gap_at(gaps, l);
    suffix[l] = suffix[l + 1] + alpha_bottom / (g * g);
  }
  for (int i = 2; i <= k_arms; ++i) {
    const double g = gap_at(gaps, i);
    const double lhs = (k_arms - i) * alpha_bottom / (g * g) - suffix[i + 1];
    double pressure = 0.0;
    for (int k : compute_S_m(beta, alpha1_min, layer_sizes, gaps, i)) {
      pressure += (layer_sizes[k - 1] - 1) * alpha_sup(beta, alpha1_min, k - 1);
    }
    if (lhs <= pressure / (g * g)) return i;
  }
  return k_arms;  // unreachable: the condition is vacuous at i = K
}

BoundReport theorem4_bound(double beta, std::span<const double> alpha1_min,
                           std::span<const int> layer_sizes,
                           std::span<const double> gaps, double n, double epsilon) {
  check_gaps(gaps);
  if (alpha1_min.empty() || alpha1_min.size() != layer_sizes.size()) {
    throw ConfigError("theorem4_bound: need matching per-layer sizes and parameters");
  }
  if (!(n >= 1.0)) throw ConfigError("theorem4_bound: n must be >= 1");
  if (!(epsilon >= 0.0)) throw ConfigError("theorem4_bound: epsilon must be >= 0");
  const int r = static_cast<int>(layer_sizes.size());
  const int k_arms = static_cast<int>(gaps.size()) + 1;

  BoundReport report;
  report.kind = "theorem4";
  // stated regime: 1 < L_1 < ... < L_R < K (applied outside it regardless)
  bool in_regime = layer_sizes[0] > 1 && layer_sizes[r - 1] < k_arms;
  for (int k = 1; k < r && in_regime; ++k) {
    if (!(layer_sizes[k - 1] < layer_sizes[k])) in_regime = false;
  }
  if (!in_regime) {
    report.warnings.push_back("layer sizes violate 1 < L_1 < ... < L_R < K; "
                              "bound evaluated outside its stated regime");
  }

  const double alpha_bottom = alpha1_min.back();
  const int i_star = compute_i_star(beta, alpha1_min, layer_sizes, gaps);
  report.i_star = i_star;
  for (int m = 2; m <= k_arms; ++m) {
    report.s_sets.push_back(compute_S_m(beta, alpha1_min, layer_sizes, gaps, m));
  }

  if (i_star > 2) {
    const double g_prev = gap_at(gaps, i_star - 1);
    double tail_gaps = 0.0;
    for (int l = i_star; l <= k_arms; ++l) tail_gaps += gap_at(gaps, l);
    report.coefficient = alpha_bottom / (2.0 * g_prev * g_prev) * tail_gaps;
    for (int i = 2; i <= i_star - 1; ++i) {
      report.coefficient += alpha_bottom / (2.0 * gap_at(gaps, i));
    }
  } else {
    double pressure = 0.0;
    for (int k : report.s_sets[0]) {  // S_2
      pressure += (layer_sizes[k - 1] - 1) * alpha_sup(beta, alpha1_min, k - 1);
    }
    const double delta_2 = gap_at(gaps, 2);
    const double delta_k = gap_at(gaps, k_arms);
    report.coefficient = pressure * delta_k / (2.0 * delta_2 * delta_2);
    for (int i = 2; i <= k_arms; ++i) {
      report.coefficient += alpha_bottom / (2.0 * gap_at(gaps, i));
    }
  }
  report.coefficient += epsilon;
  report.unquantified.push_back("C_eps_delta");
  return report;
}

std::vector<PullBounds> lemma1_pull_bounds(double alpha, std::span<const double> gaps,
                                           double n, double epsilon) {
  check_gaps(gaps);
  if (!(n >= 1.0)) throw ConfigError("lemma1_pull_bounds: n must be >= 1");
  if (!(epsilon > 0.0)) throw ConfigError("lemma1_pull_bounds: lower bound needs eps > 0");
  const double log_n = std::log(n);
  std::vector<PullBounds> out;
  out.reserve(gaps.size());
  for (std::size_t idx = 0; idx < gaps.size(); ++idx) {
    const double g = gaps[idx];
    PullBounds pb;
    pb.arm = static_cast<int>(idx) + 2;
    pb.upper = alpha / (2.0 * g * g) * log_n + 1.0;
    pb.lower = alpha / (2.0 * (g + epsilon) * (g + epsilon)) * log_n;
    out.push_back(pb);
  }
  return out;
}

}  // namespace hexb
