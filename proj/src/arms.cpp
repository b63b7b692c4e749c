#include "arms.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace hexb {

std::string arm_kind_name(ArmKind kind) {
  switch (kind) {
    case ArmKind::Deterministic: return "Deterministic";
    case ArmKind::Bernoulli: return "Bernoulli";
    case ArmKind::Beta: return "Beta";
    case ArmKind::BinomialNormalized: return "BinomialNormalized";
  }
  return "?";
}

std::optional<ArmKind> arm_kind_from_name(const std::string& name) {
  if (name == "Deterministic") return ArmKind::Deterministic;
  if (name == "Bernoulli") return ArmKind::Bernoulli;
  if (name == "Beta") return ArmKind::Beta;
  if (name == "BinomialNormalized") return ArmKind::BinomialNormalized;
  return std::nullopt;
}

double ArmSpec::mean() const {
  switch (kind) {
    case ArmKind::Deterministic:
    case ArmKind::Bernoulli:
    case ArmKind::BinomialNormalized:
      return p;
    case ArmKind::Beta:
      return a / (a + b);
  }
  return 0.0;
}

void ArmSpec::validate() const {
  switch (kind) {
    case ArmKind::Deterministic:
    case ArmKind::Bernoulli:
      if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("arm p must lie in [0,1]");
      break;
    case ArmKind::Beta:
      if (!(a > 0.0) || !(b > 0.0)) throw ConfigError("Beta shapes must be positive");
      break;
    case ArmKind::BinomialNormalized:
      if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("arm p must lie in [0,1]");
      if (trials < 1) throw ConfigError("Binomial trials must be a positive integer");
      break;
  }
}

double sample_arm(const ArmSpec& arm, Rng& rng) {
  switch (arm.kind) {
    case ArmKind::Deterministic:
      return arm.p;
    case ArmKind::Bernoulli:
      return rng.bernoulli(arm.p) ? 1.0 : 0.0;
    case ArmKind::Beta:
      return rng.beta(arm.a, arm.b);
    case ArmKind::BinomialNormalized: {
      int successes = 0;
      for (int i = 0; i < arm.trials; ++i) {
        if (rng.bernoulli(arm.p)) ++successes;
      }
      return static_cast<double>(successes) / static_cast<double>(arm.trials);
    }
  }
  return 0.0;
}

ArmSet ArmSet::create(std::vector<ArmSpec> arms) {
  if (arms.size() < 2) throw ConfigError("arm set needs K >= 2 arms");
  for (const ArmSpec& a : arms) a.validate();
  ArmSet set;
  set.arms_ = std::move(arms);
  set.means_.reserve(set.arms_.size());
  for (const ArmSpec& a : set.arms_) set.means_.push_back(a.mean());
  if (!(set.means_[0] > set.means_[1])) {
    throw ConfigError("arm means must satisfy mu_1 > mu_2 (strict first gap)");
  }
  for (std::size_t i = 2; i < set.means_.size(); ++i) {
    if (set.means_[i - 1] < set.means_[i]) {
      throw ConfigError("arm means must be sorted in descending order");
    }
  }
  set.gaps_.reserve(set.means_.size() - 1);
  for (std::size_t i = 1; i < set.means_.size(); ++i) {
    set.gaps_.push_back(set.means_[0] - set.means_[i]);
  }
  return set;
}

ArmSet ArmSet::create_sorted(std::vector<ArmSpec> arms) {
  std::stable_sort(arms.begin(), arms.end(),
                   [](const ArmSpec& x, const ArmSpec& y) { return x.mean() > y.mean(); });
  return create(std::move(arms));
}

namespace {

ArmSpec draw_arm(ArmKind kind, Rng& rng) {
  ArmSpec arm;
  arm.kind = kind;
  arm.p = rng.uniform01();
  if (kind == ArmKind::Beta) {
    arm.a = rng.uniform(2.0, 100.0);
    arm.b = rng.uniform(2.0, 100.0);
  } else if (kind == ArmKind::BinomialNormalized) {
    arm.trials = static_cast<int>(rng.uniform_int(2, 30));
  }
  return arm;
}

}  // namespace

ArmSet generate_arm_set(ArmKind kind, std::optional<int> k_override, Rng& rng) {
  if (k_override && *k_override < 2) throw ConfigError("k_override must be >= 2");
  const int k = k_override ? *k_override : static_cast<int>(rng.uniform_int(2, 30));
  std::vector<ArmSpec> arms;
  arms.reserve(k);
  for (int i = 0; i < k; ++i) arms.push_back(draw_arm(kind, rng));

  auto by_mean_desc = [](const ArmSpec& x, const ArmSpec& y) { return x.mean() > y.mean(); };
  std::stable_sort(arms.begin(), arms.end(), by_mean_desc);
  // mu_1 > mu_2 must be strict; resample the tying arm (possible for
  // duplicated discrete draws, probability zero for continuous ones)
  while (arms[0].mean() == arms[1].mean()) {
    arms[1] = draw_arm(kind, rng);
    std::stable_sort(arms.begin(), arms.end(), by_mean_desc);
  }
  return ArmSet::create(std::move(arms));
}

ArmSet arm_set_from_means(ArmKind kind, const std::vector<double>& means) {
  if (kind != ArmKind::Deterministic && kind != ArmKind::Bernoulli) {
    throw ConfigError("arm_set_from_means supports Deterministic and Bernoulli kinds");
  }
  std::vector<ArmSpec> arms;
  arms.reserve(means.size());
  for (double m : means) {
    ArmSpec arm;
    arm.kind = kind;
    arm.p = m;
    arms.push_back(arm);
  }
  return ArmSet::create(std::move(arms));
}

}  // namespace hexb
