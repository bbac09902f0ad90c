// Copyright 2026 The Microworld Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "microworld/serialization.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <string>

#include "microworld/errors.hpp"
#include "microworld/language.hpp"

namespace microworld {
namespace {

using nlohmann::json;

// Object reader that rejects keys nobody asked about.
class Fields {
 public:
  Fields(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j.is_object()) throw ConfigError(where_ + ": expected an object");
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return j_.contains(key) && !j_.at(key).is_null();
  }

  const json& at(const std::string& key) {
    if (!has(key)) throw ConfigError(where_ + ": missing '" + key + "'");
    return j_.at(key);
  }

  template <typename T>
  T get(const std::string& key) {
    try {
      return at(key).get<T>();
    } catch (const json::exception& e) {
      throw ConfigError(where_ + "." + key + ": " + e.what());
    }
  }

  template <typename T>
  void maybe(const std::string& key, T& out) {
    if (has(key)) out = get<T>(key);
  }

  void finish() const {
    for (const auto& item : j_.items()) {
      if (!seen_.count(item.key())) throw ConfigError(where_ + ": unknown key '" + item.key() + "'");
    }
  }

  const std::string& where() const { return where_; }

 private:
  const json& j_;
  std::string where_;
  std::set<std::string> seen_;
};

template <typename T, typename Parse>
T named(const json& j, Parse parse, const char* what) {
  if (!j.is_string()) throw ConfigError(std::string(what) + " must be a string");
  const auto value = parse(j.get<std::string>());
  if (!value) throw ConfigError("unknown " + std::string(what) + " '" + j.get<std::string>() + "'");
  return *value;
}

json range_to_json(const Range& r) { return json::array({r.min, r.max}); }

Range range_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ConfigError(where + ": expected [min, max]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json combinations_to_json(const std::vector<Combination>& combos) {
  if (combos == all_combinations()) return "all";
  json out = json::array();
  for (Combination c : combos) out.push_back(combination_name(c));
  return out;
}

std::vector<Combination> combinations_from_json(const json& j) {
  if (j.is_string() && j.get<std::string>() == "all") return all_combinations();
  if (!j.is_array()) throw ConfigError("combinations must be \"all\" or a list");
  std::vector<Combination> out;
  for (const json& item : j) out.push_back(named<Combination>(item, combination_from_name, "combination"));
  return out;
}

json world_spec_to_json(const WorldSpec& w) {
  return {
      {"counts", w.count_choices},
      {"combinations", combinations_to_json(w.allowed_combinations)},
      {"required_combinations", combinations_to_json(w.required_combinations)},
      {"size", range_to_json(w.size)},
      {"distortion", range_to_json(w.distortion)},
      {"rotation", range_to_json(w.rotation)},
      {"shade", {{"mean", w.shade.mean}, {"stddev", w.shade.stddev}, {"min", w.shade.min}, {"max", w.shade.max}}},
      {"pixel_noise_sigma", w.pixel_noise_sigma},
      {"collision_padding", w.collision_padding},
      {"max_placement_attempts", w.max_placement_attempts},
      {"max_world_attempts", w.max_world_attempts},
  };
}

WorldSpec world_spec_from_json(const json& j, const std::string& where, int image_size) {
  Fields f(j, where);
  WorldSpec w;
  w.image_size = image_size;
  w.count_choices = f.get<std::vector<int>>("counts");
  if (f.has("combinations")) w.allowed_combinations = combinations_from_json(f.at("combinations"));
  else w.allowed_combinations = all_combinations();
  if (f.has("required_combinations")) {
    const json& r = f.at("required_combinations");
    w.required_combinations = r.is_array() && r.empty() ? std::vector<Combination>{} : combinations_from_json(r);
  }
  if (f.has("size")) w.size = range_from_json(f.at("size"), where + ".size");
  if (f.has("distortion")) w.distortion = range_from_json(f.at("distortion"), where + ".distortion");
  if (f.has("rotation")) w.rotation = range_from_json(f.at("rotation"), where + ".rotation");
  if (f.has("shade")) {
    Fields s(f.at("shade"), where + ".shade");
    s.maybe("mean", w.shade.mean);
    s.maybe("stddev", w.shade.stddev);
    s.maybe("min", w.shade.min);
    s.maybe("max", w.shade.max);
    s.finish();
  }
  f.maybe("pixel_noise_sigma", w.pixel_noise_sigma);
  f.maybe("collision_padding", w.collision_padding);
  f.maybe("max_placement_attempts", w.max_placement_attempts);
  f.maybe("max_world_attempts", w.max_world_attempts);
  f.finish();
  return w;
}

json caption_spec_to_json(const CaptionSpec& c) {
  json quantifiers = json::array();
  for (Quantifier q : c.quantifiers) quantifiers.push_back(quantifier_name(q));
  json relations = json::array();
  for (Relation r : c.relations) relations.push_back(relation_name(r));
  return {
      {"patterns",
       {{"existential", c.patterns.existential},
        {"relational", c.patterns.relational},
        {"quantified", c.patterns.quantified},
        {"conjunction", c.patterns.conjunction}}},
      {"granularity",
       {{"color_shape", c.granularity.color_shape},
        {"shape_only", c.granularity.shape_only},
        {"color_only", c.granularity.color_only}}},
      {"quantifiers", quantifiers},
      {"relations", relations},
      {"relation_margin", c.relation_margin},
      {"max_attempts", c.max_attempts},
  };
}

CaptionSpec caption_spec_from_json(const json& j) {
  Fields f(j, "captions");
  CaptionSpec c;
  {
    Fields p(f.at("patterns"), "captions.patterns");
    p.maybe("existential", c.patterns.existential);
    p.maybe("relational", c.patterns.relational);
    p.maybe("quantified", c.patterns.quantified);
    p.maybe("conjunction", c.patterns.conjunction);
    p.finish();
  }
  if (f.has("granularity")) {
    Fields g(f.at("granularity"), "captions.granularity");
    g.maybe("color_shape", c.granularity.color_shape);
    g.maybe("shape_only", c.granularity.shape_only);
    g.maybe("color_only", c.granularity.color_only);
    g.finish();
  }
  if (f.has("quantifiers")) {
    for (const json& q : f.at("quantifiers")) c.quantifiers.push_back(named<Quantifier>(q, quantifier_from_name, "quantifier"));
  }
  if (f.has("relations")) {
    for (const json& r : f.at("relations")) c.relations.push_back(named<Relation>(r, relation_from_name, "relation"));
  }
  f.maybe("relation_margin", c.relation_margin);
  f.maybe("max_attempts", c.max_attempts);
  f.finish();
  return c;
}

json negatives_to_json(const NegativeSpec& n) {
  json strategies = json::object();
  for (const StrategyWeight& s : n.strategies) strategies[std::string(strategy_name(s.strategy))] = s.weight;
  return {{"false_world_probability", n.false_world_probability}, {"strategies", strategies}};
}

NegativeSpec negatives_from_json(const json& j) {
  Fields f(j, "negatives");
  NegativeSpec n;
  f.maybe("false_world_probability", n.false_world_probability);
  if (f.has("strategies")) {
    const json& s = f.at("strategies");
    if (!s.is_object()) throw ConfigError("negatives.strategies must map strategy names to weights");
    // Keep the canonical strategy order regardless of key order.
    for (CorruptionStrategy strategy : kAllStrategies) {
      const std::string key(strategy_name(strategy));
      if (!s.contains(key)) continue;
      if (!s.at(key).is_number()) throw ConfigError("negatives.strategies." + key + " must be a number");
      n.strategies.push_back({strategy, s.at(key).get<double>()});
    }
    for (const auto& item : s.items()) {
      if (!strategy_from_name(item.key())) throw ConfigError("unknown strategy '" + item.key() + "'");
    }
  }
  f.finish();
  return n;
}

nlohmann::json optional_name(const std::optional<ShapeKind>& shape) {
  return shape ? json(std::string(shape_name(*shape))) : json(nullptr);
}

nlohmann::json optional_name(const std::optional<Color>& color) {
  return color ? json(std::string(color_name(*color))) : json(nullptr);
}

}  // namespace

json predicate_to_json(const EntityPredicate& predicate) {
  return {{"color", optional_name(predicate.color)}, {"shape", optional_name(predicate.shape)}};
}

EntityPredicate predicate_from_json(const json& j) {
  Fields f(j, "predicate");
  EntityPredicate p;
  if (f.has("shape")) p.shape = named<ShapeKind>(f.at("shape"), shape_from_name, "shape");
  if (f.has("color")) p.color = named<Color>(f.at("color"), color_from_name, "color");
  f.finish();
  return p;
}

json caption_to_json(const Caption& caption) {
  return std::visit(
      [](const auto& node) -> json {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Existential>) {
          return {{"type", "existential"}, {"predicate", predicate_to_json(node.predicate)}};
        } else if constexpr (std::is_same_v<T, Relational>) {
          return {{"type", "relational"},
                  {"subject", predicate_to_json(node.subject)},
                  {"relation", relation_name(node.relation)},
                  {"object", predicate_to_json(node.object)}};
        } else if constexpr (std::is_same_v<T, Quantified>) {
          return {{"type", "quantified"},
                  {"quantifier", quantifier_name(node.quantifier)},
                  {"restrictor", predicate_to_json(node.restrictor)},
                  {"body", predicate_to_json(node.body)}};
        } else {
          return {{"type", "conjunction"}, {"left", caption_to_json(*node.left)}, {"right", caption_to_json(*node.right)}};
        }
      },
      caption.node);
}

Caption caption_from_json(const json& j) {
  Fields f(j, "ast");
  const std::string type = f.get<std::string>("type");
  Caption out;
  if (type == "existential") {
    out = Existential{predicate_from_json(f.at("predicate"))};
  } else if (type == "relational") {
    out = Relational{predicate_from_json(f.at("subject")), named<Relation>(f.at("relation"), relation_from_name, "relation"),
                     predicate_from_json(f.at("object"))};
  } else if (type == "quantified") {
    out = Quantified{named<Quantifier>(f.at("quantifier"), quantifier_from_name, "quantifier"),
                     predicate_from_json(f.at("restrictor")), predicate_from_json(f.at("body"))};
  } else if (type == "conjunction") {
    out = conjoin(caption_from_json(f.at("left")), caption_from_json(f.at("right")));
  } else {
    throw ConfigError("unknown caption type '" + type + "'");
  }
  f.finish();
  if (!is_valid(out)) throw ConfigError("malformed caption tree");
  return out;
}

json world_to_json(const WorldModel& world) {
  json entities = json::array();
  for (const Entity& e : world.entities) {
    entities.push_back({
        {"color", color_name(e.color)},
        {"distortion", e.distortion},
        {"location", json::array({e.location.x, e.location.y})},
        {"rotation", e.rotation},
        {"shade", e.shade},
        {"shape", shape_name(e.shape)},
        {"size", e.size},
    });
  }
  return {{"entities", entities}, {"pixel_noise_sigma", world.pixel_noise_sigma}};
}

WorldModel world_from_json(const json& j) {
  Fields f(j, "world");
  WorldModel w;
  f.maybe("pixel_noise_sigma", w.pixel_noise_sigma);
  for (const json& item : f.at("entities")) {
    Fields e(item, "entity");
    Entity entity;
    entity.shape = named<ShapeKind>(e.at("shape"), shape_from_name, "shape");
    entity.color = named<Color>(e.at("color"), color_from_name, "color");
    const auto loc = e.get<std::vector<double>>("location");
    if (loc.size() != 2) throw ConfigError("entity location must be [x, y]");
    entity.location = {loc[0], loc[1]};
    entity.size = e.get<double>("size");
    entity.distortion = e.get<double>("distortion");
    entity.rotation = e.get<double>("rotation");
    entity.shade = e.get<double>("shade");
    e.finish();
    w.entities.push_back(entity);
  }
  f.finish();
  return w;
}

json instance_record(const Instance& instance) {
  return {
      {"ast", caption_to_json(instance.caption)},
      {"caption", instance.caption_text},
      {"index", instance.index},
      {"label", instance.label},
      {"partition_tag", instance.partition_tag},
      {"sub_seed", instance.sub_seed},
      {"world", world_to_json(instance.world)},
  };
}

json dataset_to_json(const DatasetSpec& spec) {
  json out = {{"name", spec.name}, {"image_size", spec.image_size}};
  if (spec.partition) out["partition"] = *spec.partition;
  if (spec.is_mixer()) {
    json components = json::array();
    for (const MixComponent& c : spec.components) {
      components.push_back({{"weight", c.weight}, {"dataset", dataset_to_json(c.spec)}});
    }
    out["components"] = components;
    return out;
  }
  out["positive_probability"] = spec.positive_probability;
  out["captions"] = caption_spec_to_json(spec.captions);
  out["negatives"] = negatives_to_json(spec.negatives);
  json splits = json::object();
  for (Split s : kAllSplits) splits[std::string(split_name(s))] = world_spec_to_json(spec.world_spec(s));
  out["splits"] = splits;
  return out;
}

DatasetSpec dataset_from_json(const json& j) {
  Fields f(j, "dataset");
  DatasetSpec spec;
  spec.name = f.get<std::string>("name");
  f.maybe("image_size", spec.image_size);
  if (f.has("partition")) spec.partition = f.get<std::string>("partition");
  if (f.has("components")) {
    std::vector<DatasetSpec> parts;
    std::vector<double> weights;
    for (const json& item : f.at("components")) {
      Fields c(item, "component");
      parts.push_back(dataset_from_json(c.at("dataset")));
      weights.push_back(c.has("weight") ? c.get<double>("weight") : 1.0);
      c.finish();
    }
    f.finish();
    auto partition = spec.partition;
    spec = mix(std::move(parts), weights, spec.name);
    if (partition) spec = restrict_partition(std::move(spec), *partition);
    return spec;
  }
  f.maybe("positive_probability", spec.positive_probability);
  spec.captions = caption_spec_from_json(f.at("captions"));
  if (f.has("negatives")) spec.negatives = negatives_from_json(f.at("negatives"));
  {
    Fields s(f.at("splits"), "splits");
    for (Split split : kAllSplits) {
      const std::string key(split_name(split));
      spec.world_spec(split) = world_spec_from_json(s.at(key), "splits." + key, spec.image_size);
    }
    s.finish();
  }
  f.finish();
  spec.validate();
  if (spec.partition) {
    std::string tag = *spec.partition;
    spec = restrict_partition(std::move(spec), std::move(tag));
  }
  return spec;
}

DatasetSpec load_dataset(std::string_view name_or_path) {
  const auto names = builtin_dataset_names();
  if (std::find(names.begin(), names.end(), name_or_path) != names.end()) return builtin_dataset(name_or_path);
  std::filesystem::path path(name_or_path);
  if (std::filesystem::is_directory(path)) path /= "manifest.json";
  std::ifstream in(path);
  if (!in) throw UnknownDataset("'" + std::string(name_or_path) + "' is neither a built-in dataset nor a readable file");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  if (j.is_object() && j.contains("format_version") && j.contains("config")) return dataset_from_json(j.at("config"));
  return dataset_from_json(j);
}

}  // namespace microworld
