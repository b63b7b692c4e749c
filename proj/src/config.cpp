#include "config.hpp"

#include <algorithm>
#include <cstdio>

namespace hexb {

void JsonCursor::fail(const std::string& message) const {
  throw ConfigError(path_ + ": " + message);
}

JsonCursor JsonCursor::at(const std::string& key) const {
  if (!j_->is_object()) fail("expected an object");
  auto it = j_->find(key);
  if (it == j_->end()) fail("missing required key \"" + key + "\"");
  return JsonCursor(*it, path_ + "." + key);
}

std::optional<JsonCursor> JsonCursor::maybe(const std::string& key) const {
  if (!j_->is_object()) fail("expected an object");
  auto it = j_->find(key);
  if (it == j_->end()) return std::nullopt;
  return JsonCursor(*it, path_ + "." + key);
}

JsonCursor JsonCursor::item(std::size_t index) const {
  if (!j_->is_array()) fail("expected an array");
  return JsonCursor((*j_)[index], path_ + "[" + std::to_string(index) + "]");
}

std::size_t JsonCursor::array_size() const {
  if (!j_->is_array()) fail("expected an array");
  return j_->size();
}

void JsonCursor::allow_keys(std::initializer_list<const char*> keys) const {
  if (!j_->is_object()) fail("expected an object");
  for (auto it = j_->begin(); it != j_->end(); ++it) {
    const bool known = std::any_of(keys.begin(), keys.end(),
                                   [&](const char* k) { return it.key() == k; });
    if (!known) fail("unknown key \"" + it.key() + "\"");
  }
}

double JsonCursor::number() const {
  if (!j_->is_number()) fail("expected a number");
  return j_->get<double>();
}

std::int64_t JsonCursor::integer() const {
  if (!j_->is_number_integer() && !j_->is_number_unsigned()) fail("expected an integer");
  return j_->get<std::int64_t>();
}

std::string JsonCursor::str() const {
  if (!j_->is_string()) fail("expected a string");
  return j_->get<std::string>();
}

bool JsonCursor::boolean() const {
  if (!j_->is_boolean()) fail("expected a boolean");
  return j_->get<bool>();
}

Json parse_json_text(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ConfigError("malformed JSON document");
  return j;
}

ArmSet parse_arm_set(const JsonCursor& c) {
  c.allow_keys({"kind", "arms"});
  const std::string kind_name = c.at("kind").str();
  const auto kind = arm_kind_from_name(kind_name);
  if (!kind) c.at("kind").fail("unknown arm kind \"" + kind_name + "\"");

  const JsonCursor arms_c = c.at("arms");
  const std::size_t count = arms_c.array_size();
  std::vector<ArmSpec> arms;
  arms.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const JsonCursor a = arms_c.item(i);
    ArmSpec arm;
    arm.kind = *kind;
    switch (*kind) {
      case ArmKind::Deterministic:
      case ArmKind::Bernoulli:
        a.allow_keys({"p"});
        arm.p = a.at("p").number();
        break;
      case ArmKind::Beta:
        a.allow_keys({"a", "b"});
        arm.a = a.at("a").number();
        arm.b = a.at("b").number();
        break;
      case ArmKind::BinomialNormalized:
        a.allow_keys({"p", "trials"});
        arm.p = a.at("p").number();
        arm.trials = static_cast<int>(a.at("trials").integer());
        break;
    }
    try {
      arm.validate();
    } catch (const ConfigError& e) {
      a.fail(e.what());
    }
    arms.push_back(arm);
  }
  try {
    return ArmSet::create(std::move(arms));
  } catch (const ConfigError& e) {
    c.fail(e.what());
  }
}

PolicySpec parse_policy(const JsonCursor& c) {
  const std::string kind_name = c.at("kind").str();
  const auto kind = policy_kind_from_name(kind_name);
  if (!kind) c.at("kind").fail("unknown policy kind \"" + kind_name + "\"");
  PolicySpec spec;
  spec.kind = *kind;
  switch (*kind) {
    case PolicyKind::AlphaUCB:
      c.allow_keys({"kind", "alpha", "local_clock"});
      spec.alpha = c.at("alpha").number();
      if (auto lc = c.maybe("local_clock")) spec.local_clock = lc->boolean();
      break;
    case PolicyKind::EpsilonGreedy:
      c.allow_keys({"kind", "epsilon"});
      spec.epsilon = c.at("epsilon").number();
      break;
    case PolicyKind::BadFixed: {
      c.allow_keys({"kind", "target"});
      const std::int64_t target = c.at("target").integer();  // 1-based in the document
      if (target < 1) c.at("target").fail("target must be >= 1");
      spec.target = static_cast<int>(target) - 1;
      break;
    }
    case PolicyKind::LeastPulls:
      c.allow_keys({"kind"});
      break;
  }
  try {
    spec.validate();
  } catch (const ConfigError& e) {
    c.fail(e.what());
  }
  return spec;
}

HierarchySpec parse_hierarchy(const JsonCursor& c) {
  c.allow_keys({"top", "layers", "observation_mode"});
  HierarchySpec spec;
  spec.top = parse_policy(c.at("top"));
  const JsonCursor layers = c.at("layers");
  spec.layers.resize(layers.array_size());
  for (std::size_t k = 0; k < spec.layers.size(); ++k) {
    const JsonCursor layer = layers.item(k);
    const std::size_t experts = layer.array_size();
    if (experts == 0) layer.fail("a layer needs at least one expert");
    spec.layers[k].reserve(experts);
    for (std::size_t j = 0; j < experts; ++j) {
      spec.layers[k].push_back(parse_policy(layer.item(j)));
    }
  }
  if (auto mode = c.maybe("observation_mode")) {
    const std::string name = mode->str();
    const auto parsed = observation_mode_from_name(name);
    if (!parsed) mode->fail("unknown observation mode \"" + name + "\"");
    spec.observation_mode = *parsed;
  }
  return spec;
}

SimulationConfig parse_simulation_config(const std::string& text) {
  const Json doc = parse_json_text(text);
  const JsonCursor root = JsonCursor::root(doc);
  root.allow_keys({"arms", "hierarchy", "horizon"});
  SimulationConfig cfg;
  cfg.arms = parse_arm_set(root.at("arms"));
  cfg.hierarchy = parse_hierarchy(root.at("hierarchy"));
  cfg.horizon = root.at("horizon").integer();
  if (cfg.horizon < 1) root.at("horizon").fail("horizon must be >= 1");
  try {
    cfg.hierarchy.validate(cfg.arms.size());
  } catch (const ConfigError& e) {
    root.at("hierarchy").fail(e.what());
  }
  return cfg;
}

ExperimentConfig parse_experiment_config(const std::string& text,
                                         std::optional<ExperimentKind> expected_kind) {
  const Json doc = parse_json_text(text);
  const JsonCursor root = JsonCursor::root(doc);
  ExperimentConfig cfg;
  if (auto kind_c = root.maybe("kind")) {
    const std::string name = kind_c->str();
    const auto kind = experiment_kind_from_name(name);
    if (!kind) kind_c->fail("unknown experiment kind \"" + name + "\"");
    if (expected_kind && *kind != *expected_kind) {
      kind_c->fail("config kind \"" + name + "\" does not match the requested experiment");
    }
    cfg.kind = *kind;
  } else if (expected_kind) {
    cfg.kind = *expected_kind;
  } else {
    root.fail("missing required key \"kind\"");
  }

  auto read_common = [&](const JsonCursor& c) {
    if (auto s = c.maybe("seed")) cfg.seed = static_cast<std::uint64_t>(s->integer());
    if (auto p = c.maybe("processes")) {
      cfg.processes = static_cast<int>(p->integer());
      if (cfg.processes < 1) p->fail("processes must be >= 1");
    }
    if (auto h = c.maybe("horizon")) {
      cfg.horizon = h->integer();
      if (cfg.horizon < 1) h->fail("horizon must be >= 1");
    }
  };

  switch (cfg.kind) {
    case ExperimentKind::ParamInflation: {
      root.allow_keys({"kind", "seed", "processes", "repeats", "horizon", "distribution",
                       "inflation_value"});
      read_common(root);
      if (auto r = root.maybe("repeats")) {
        cfg.repeats = static_cast<int>(r->integer());
        if (cfg.repeats < 1) r->fail("repeats must be >= 1");
      }
      if (auto d = root.maybe("distribution")) {
        const std::string name = d->str();
        const auto kind = arm_kind_from_name(name);
        if (!kind) d->fail("unknown arm kind \"" + name + "\"");
        cfg.distribution = *kind;
      }
      if (auto v = root.maybe("inflation_value")) {
        cfg.inflation_value = v->number();
        if (!(cfg.inflation_value > 0.0)) v->fail("inflation_value must be > 0");
      }
      break;
    }
    case ExperimentKind::SelectionRanges: {
      root.allow_keys({"kind", "seed", "processes", "horizon", "arms", "hierarchy",
                       "standalone_experts"});
      read_common(root);
      if (auto a = root.maybe("arms")) cfg.arms = parse_arm_set(*a);
      if (auto h = root.maybe("hierarchy")) cfg.hierarchy = parse_hierarchy(*h);
      if (auto e = root.maybe("standalone_experts")) {
        for (std::size_t i = 0; i < e->array_size(); ++i) {
          const std::int64_t j = e->item(i).integer();
          if (j < 1) e->item(i).fail("expert index must be >= 1");
          cfg.standalone_experts.push_back(static_cast<int>(j));
        }
      }
      break;
    }
    case ExperimentKind::ExpertCount: {
      root.allow_keys({"kind", "seed", "horizon", "arms", "num_arms", "i_max",
                       "hierarchies_per_i"});
      read_common(root);
      if (auto a = root.maybe("arms")) cfg.arms = parse_arm_set(*a);
      if (auto k = root.maybe("num_arms")) {
        cfg.num_arms = static_cast<int>(k->integer());
        if (cfg.num_arms < 2) k->fail("num_arms must be >= 2");
      }
      if (auto i = root.maybe("i_max")) {
        cfg.i_max = static_cast<int>(i->integer());
        if (cfg.i_max < 1) i->fail("i_max must be >= 1");
      }
      if (auto h = root.maybe("hierarchies_per_i")) {
        cfg.hierarchies_per_i = static_cast<int>(h->integer());
        if (cfg.hierarchies_per_i < 1) h->fail("hierarchies_per_i must be >= 1");
      }
      break;
    }
  }
  return cfg;
}

BoundsQuery parse_bounds_config(const std::string& text) {
  const Json doc = parse_json_text(text);
  const JsonCursor root = JsonCursor::root(doc);
  BoundsQuery q;
  q.bound = root.at("bound").str();
  q.arms = parse_arm_set(root.at("arms"));

  auto read_n = [&](double minimum) {
    q.n = root.at("n").number();
    if (!(q.n >= minimum)) root.at("n").fail("n must be >= " + std::to_string(minimum));
  };

  if (q.bound == "fact1") {
    root.allow_keys({"bound", "arms", "n", "alpha"});
    read_n(1.0);
    q.alpha = root.at("alpha").number();
  } else if (q.bound == "fact2") {
    root.allow_keys({"bound", "arms", "n"});
    read_n(2.0);
  } else if (q.bound == "theorem1") {
    root.allow_keys({"bound", "arms", "n", "layers"});
    read_n(1.0);
    q.layers = static_cast<int>(root.at("layers").integer());
    if (q.layers < 1) root.at("layers").fail("layers must be >= 1");
  } else if (q.bound == "theorem3") {
    root.allow_keys({"bound", "arms", "n", "bottom_alphas"});
    read_n(1.0);
    const JsonCursor alphas = root.at("bottom_alphas");
    for (std::size_t i = 0; i < alphas.array_size(); ++i) {
      q.bottom_alphas.push_back(alphas.item(i).number());
    }
    if (q.bottom_alphas.empty()) alphas.fail("bottom_alphas must be non-empty");
  } else if (q.bound == "theorem4") {
    root.allow_keys({"bound", "arms", "n", "beta", "alpha1_per_layer", "layer_sizes", "epsilon"});
    read_n(1.0);
    q.beta = root.at("beta").number();
    const JsonCursor alphas = root.at("alpha1_per_layer");
    for (std::size_t i = 0; i < alphas.array_size(); ++i) {
      q.alpha1_per_layer.push_back(alphas.item(i).number());
    }
    const JsonCursor sizes = root.at("layer_sizes");
    for (std::size_t i = 0; i < sizes.array_size(); ++i) {
      q.layer_sizes.push_back(static_cast<int>(sizes.item(i).integer()));
    }
    if (q.alpha1_per_layer.empty() || q.alpha1_per_layer.size() != q.layer_sizes.size()) {
      root.fail("alpha1_per_layer and layer_sizes must be non-empty and equally long");
    }
    if (auto e = root.maybe("epsilon")) q.epsilon = e->number();
  } else if (q.bound == "lemma1") {
    root.allow_keys({"bound", "arms", "n", "alpha", "epsilon"});
    read_n(1.0);
    q.alpha = root.at("alpha").number();
    q.epsilon = root.at("epsilon").number();
  } else {
    root.at("bound").fail("unknown bound \"" + q.bound + "\"");
  }
  return q;
}

Json arm_set_json(const ArmSet& arms) {
  Json doc;
  doc["kind"] = arm_kind_name(arms.kind());
  Json list = Json::array();
  for (const ArmSpec& arm : arms.arms()) {
    Json a;
    switch (arm.kind) {
      case ArmKind::Deterministic:
      case ArmKind::Bernoulli:
        a["p"] = arm.p;
        break;
      case ArmKind::Beta:
        a["a"] = arm.a;
        a["b"] = arm.b;
        break;
      case ArmKind::BinomialNormalized:
        a["p"] = arm.p;
        a["trials"] = arm.trials;
        break;
    }
    list.push_back(std::move(a));
  }
  doc["arms"] = std::move(list);
  return doc;
}

Json policy_json(const PolicySpec& spec) {
  Json doc;
  doc["kind"] = policy_kind_name(spec.kind);
  switch (spec.kind) {
    case PolicyKind::AlphaUCB:
      doc["alpha"] = spec.alpha;
      if (spec.local_clock) doc["local_clock"] = true;
      break;
    case PolicyKind::EpsilonGreedy:
      doc["epsilon"] = spec.epsilon;
      break;
    case PolicyKind::BadFixed:
      doc["target"] = spec.target + 1;
      break;
    case PolicyKind::LeastPulls:
      break;
  }
  return doc;
}

Json hierarchy_json(const HierarchySpec& spec) {
  Json doc;
  doc["top"] = policy_json(spec.top);
  Json layers = Json::array();
  for (const auto& layer : spec.layers) {
    Json l = Json::array();
    for (const PolicySpec& expert : layer) l.push_back(policy_json(expert));
    layers.push_back(std::move(l));
  }
  doc["layers"] = std::move(layers);
  doc["observation_mode"] = observation_mode_name(spec.observation_mode);
  return doc;
}

Json simulation_config_json(const SimulationConfig& cfg) {
  Json doc;
  doc["arms"] = arm_set_json(cfg.arms);
  doc["hierarchy"] = hierarchy_json(cfg.hierarchy);
  doc["horizon"] = cfg.horizon;
  return doc;
}

Json experiment_config_json(const ExperimentConfig& cfg) {
  Json doc;
  doc["kind"] = experiment_kind_name(cfg.kind);
  if (cfg.seed) doc["seed"] = *cfg.seed;
  if (cfg.processes > 0) doc["processes"] = cfg.processes;
  if (cfg.horizon > 0) doc["horizon"] = cfg.horizon;
  switch (cfg.kind) {
    case ExperimentKind::ParamInflation:
      if (cfg.repeats > 0) doc["repeats"] = cfg.repeats;
      doc["distribution"] = arm_kind_name(cfg.distribution);
      doc["inflation_value"] = cfg.inflation_value;
      break;
    case ExperimentKind::SelectionRanges:
      if (cfg.arms) doc["arms"] = arm_set_json(*cfg.arms);
      if (cfg.hierarchy) doc["hierarchy"] = hierarchy_json(*cfg.hierarchy);
      if (!cfg.standalone_experts.empty()) doc["standalone_experts"] = cfg.standalone_experts;
      break;
    case ExperimentKind::ExpertCount:
      if (cfg.arms) doc["arms"] = arm_set_json(*cfg.arms);
      if (cfg.num_arms > 0) doc["num_arms"] = cfg.num_arms;
      if (cfg.i_max > 0) doc["i_max"] = cfg.i_max;
      if (cfg.hierarchies_per_i > 0) doc["hierarchies_per_i"] = cfg.hierarchies_per_i;
      break;
  }
  return doc;
}

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

std::string config_hash(const Json& canonical) {
  return hex64(fnv1a64(canonical.dump()));
}

std::string counts_digest(const RunTrace& trace) {
  std::string blob;
  for (int k = 0; k <= trace.num_layers; ++k) {
    blob += "b" + std::to_string(k) + ":";
    for (std::int64_t c : trace.selection_counts(k)) blob += std::to_string(c) + ",";
    blob += ";";
  }
  return hex64(fnv1a64(blob));
}

Json run_record_json(const RunRecord& record) {
  Json doc;
  doc["seed"] = record.seed;
  doc["config_hash"] = record.config_hash;
  doc["horizon"] = record.horizon;
  doc["final_regret"] = record.final_regret;
  doc["counts_digest"] = record.counts_digest;
  return doc;
}

}  // namespace hexb
