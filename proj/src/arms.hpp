#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rng.hpp"

namespace hexb {

enum class ArmKind { Deterministic, Bernoulli, Beta, BinomialNormalized };

std::string arm_kind_name(ArmKind kind);
std::optional<ArmKind> arm_kind_from_name(const std::string& name);

// One reward source. Rewards always lie in [0, 1].
struct ArmSpec {
  ArmKind kind = ArmKind::Deterministic;
  double p = 0.0;   // value / Bernoulli mean / Binomial success probability
  double a = 0.0;   // Beta shape
  double b = 0.0;   // Beta shape
  int trials = 0;   // BinomialNormalized draw count

  double mean() const;
  void validate() const;  // throws ConfigError
};

double sample_arm(const ArmSpec& arm, Rng& rng);

// Ordered arm pool: means strictly greatest first, K >= 2.
class ArmSet {
 public:
  // Validates ordering (mu_1 > mu_2 >= ... >= mu_K) and arm specs.
  static ArmSet create(std::vector<ArmSpec> arms);
  // Sorts by mean descending before validating.
  static ArmSet create_sorted(std::vector<ArmSpec> arms);

  int size() const { return static_cast<int>(arms_.size()); }
  const ArmSpec& arm(int i) const { return arms_[i]; }
  const std::vector<ArmSpec>& arms() const { return arms_; }
  double mean(int i) const { return means_[i]; }
  const std::vector<double>& means() const { return means_; }
  // Suboptimality gaps: gaps()[i] = mu_1 - mu_{i+2} for i in [0, K-2].
  const std::vector<double>& gaps() const { return gaps_; }
  // 1-based arm index, i in [2, K].
  double gap_of_arm(int i) const { return gaps_[i - 2]; }
  ArmKind kind() const { return arms_[0].kind; }

 private:
  ArmSet() = default;
  std::vector<ArmSpec> arms_;
  std::vector<double> means_;
  std::vector<double> gaps_;
};

// Randomized generation protocol: K uniform on {2,...,30} unless overridden,
// parameters drawn i.i.d. (p ~ U(0,1); Beta shapes ~ U(2,100); Binomial
// trials uniform on {2,...,30}), sorted by mean descending, resampling any
// arm that ties the top mean until mu_1 > mu_2 strictly.
ArmSet generate_arm_set(ArmKind kind, std::optional<int> k_override, Rng& rng);

// Fixed arm set from explicit means (Deterministic or Bernoulli).
ArmSet arm_set_from_means(ArmKind kind, const std::vector<double>& means);

}  // namespace hexb
