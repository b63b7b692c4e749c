#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "arms.hpp"
#include "errors.hpp"
#include "experiments.hpp"
#include "hierarchy.hpp"

namespace hexb {

using Json = nlohmann::json;

// Strict JSON reader that tracks its document path for error messages and
// rejects unknown keys.
class JsonCursor {
 public:
  static JsonCursor root(const Json& j) { return JsonCursor(j, "$"); }

  const Json& raw() const { return *j_; }
  const std::string& path() const { return path_; }
  [[noreturn]] void fail(const std::string& message) const;

  bool is_object() const { return j_->is_object(); }
  JsonCursor at(const std::string& key) const;
  std::optional<JsonCursor> maybe(const std::string& key) const;
  JsonCursor item(std::size_t index) const;
  std::size_t array_size() const;
  void allow_keys(std::initializer_list<const char*> keys) const;

  double number() const;
  std::int64_t integer() const;
  std::string str() const;
  bool boolean() const;

 private:
  JsonCursor(const Json& j, std::string path) : j_(&j), path_(std::move(path)) {}
  const Json* j_;
  std::string path_;
};

struct SimulationConfig {
  ArmSet arms = ArmSet::create({{ArmKind::Deterministic, 1.0}, {ArmKind::Deterministic, 0.0}});
  HierarchySpec hierarchy;
  std::int64_t horizon = 1;
};

// Closed-form bound request for the `bounds` command.
struct BoundsQuery {
  std::string bound;  // fact1 | fact2 | theorem1 | theorem3 | theorem4 | lemma1
  ArmSet arms = ArmSet::create({{ArmKind::Deterministic, 1.0}, {ArmKind::Deterministic, 0.0}});
  double n = 0.0;
  double alpha = 0.0;                    // fact1, lemma1
  int layers = 0;                        // theorem1
  std::vector<double> bottom_alphas;     // theorem3
  double beta = 0.0;                     // theorem4
  std::vector<double> alpha1_per_layer;  // theorem4
  std::vector<int> layer_sizes;          // theorem4
  double epsilon = 0.0;                  // theorem4 (optional), lemma1 (required)
};

Json parse_json_text(const std::string& text);

ArmSet parse_arm_set(const JsonCursor& c);
PolicySpec parse_policy(const JsonCursor& c);
HierarchySpec parse_hierarchy(const JsonCursor& c);
SimulationConfig parse_simulation_config(const std::string& text);
ExperimentConfig parse_experiment_config(const std::string& text,
                                         std::optional<ExperimentKind> expected_kind);
BoundsQuery parse_bounds_config(const std::string& text);

Json arm_set_json(const ArmSet& arms);
Json policy_json(const PolicySpec& spec);
Json hierarchy_json(const HierarchySpec& spec);
Json simulation_config_json(const SimulationConfig& cfg);
Json experiment_config_json(const ExperimentConfig& cfg);

std::uint64_t fnv1a64(const std::string& text);
std::string hex64(std::uint64_t value);
// Hash of the canonicalized (re-serialized) config document.
std::string config_hash(const Json& canonical);

// One JSONL run record. The timestamp is kept out of the serialized line so
// that identical (seed, config) pairs produce byte-identical records.
struct RunRecord {
  std::uint64_t seed = 0;
  std::string config_hash;
  std::string timestamp;
  double final_regret = 0.0;
  std::int64_t horizon = 0;
  std::string counts_digest;
};

std::string counts_digest(const RunTrace& trace);
Json run_record_json(const RunRecord& record);

}  // namespace hexb
