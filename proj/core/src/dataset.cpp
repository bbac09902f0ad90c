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

#include "microworld/dataset.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "microworld/errors.hpp"

namespace microworld {
namespace {

constexpr std::array<std::string_view, 3> kSplitNames = {"train", "validation", "test"};

const std::vector<Combination> kValidationCombinations = {
    {ShapeKind::kSquare, Color::kRed},
    {ShapeKind::kTriangle, Color::kGreen},
    {ShapeKind::kCircle, Color::kBlue},
};

const std::vector<Combination> kTestCombinations = {
    {ShapeKind::kRectangle, Color::kYellow},
    {ShapeKind::kEllipse, Color::kCyan},
    {ShapeKind::kCross, Color::kMagenta},
};

std::vector<Combination> training_combinations() {
  std::vector<Combination> out;
  for (Combination c : all_combinations()) {
    const bool held_out = std::find(kValidationCombinations.begin(), kValidationCombinations.end(), c) !=
                              kValidationCombinations.end() ||
                          std::find(kTestCombinations.begin(), kTestCombinations.end(), c) != kTestCombinations.end();
    if (!held_out) out.push_back(c);
  }
  return out;
}

WorldSpec world_with(std::vector<int> counts, std::vector<Combination> allowed,
                     std::vector<Combination> required = {}) {
  WorldSpec spec;
  spec.count_choices = std::move(counts);
  spec.allowed_combinations = std::move(allowed);
  spec.required_combinations = std::move(required);
  return spec;
}

// Train on the 50 remaining combinations; each evaluation split puts one of
// its three held-out combinations into every world.
std::array<WorldSpec, 3> combination_holdout(const std::vector<int>& counts) {
  const auto train = training_combinations();
  return {world_with(counts, train), world_with(counts, train, kValidationCombinations),
          world_with(counts, train, kTestCombinations)};
}

// Dense worlds (up to 8 entities) fail placement far more often than the
// default attempt cap allows for.
constexpr int kDenseWorldAttempts = 300;

std::array<WorldSpec, 3> count_holdout(std::vector<int> train, std::vector<int> validation, std::vector<int> test) {
  const auto all = all_combinations();
  std::array<WorldSpec, 3> splits = {world_with(std::move(train), all), world_with(std::move(validation), all),
                                     world_with(std::move(test), all)};
  for (WorldSpec& spec : splits) spec.max_world_attempts = kDenseWorldAttempts;
  return splits;
}

NegativeSpec negatives_with(std::initializer_list<CorruptionStrategy> strategies) {
  NegativeSpec n;
  for (CorruptionStrategy s : strategies) n.strategies.push_back({s, 1.0});
  return n;
}

DatasetSpec oneshape() {
  DatasetSpec d;
  d.name = "oneshape";
  d.splits = combination_holdout({1});
  d.captions.patterns.existential = 1.0;
  d.negatives = negatives_with({CorruptionStrategy::kChangedShape, CorruptionStrategy::kChangedColor,
                                CorruptionStrategy::kChangedBoth});
  return d;
}

DatasetSpec multishape() {
  DatasetSpec d;
  d.name = "multishape";
  d.splits = count_holdout({1, 2, 3, 5}, {4}, {6});
  d.captions.patterns.existential = 1.0;
  d.negatives = negatives_with({CorruptionStrategy::kRandomAttrs, CorruptionStrategy::kRandomExistingAttrs});
  return d;
}

DatasetSpec spatial() {
  DatasetSpec d;
  d.name = "spatial";
  d.splits = combination_holdout({2, 3, 4});
  d.captions.patterns.relational = 1.0;
  d.captions.relations.assign(kAllRelations.begin(), kAllRelations.end());
  d.negatives = negatives_with({CorruptionStrategy::kSwappedDirection, CorruptionStrategy::kSubjectRandomAttrs,
                                CorruptionStrategy::kObjectRandomAttrs});
  return d;
}

DatasetSpec quantification() {
  DatasetSpec d;
  d.name = "quantification";
  d.splits = count_holdout({3, 4, 5, 7}, {6}, {8});
  d.captions.patterns.quantified = 1.0;
  d.captions.quantifiers.assign(kAllQuantifiers.begin(), kAllQuantifiers.end());
  d.negatives = negatives_with({CorruptionStrategy::kChangedShape, CorruptionStrategy::kChangedColor,
                                CorruptionStrategy::kChangedBoth, CorruptionStrategy::kRandomAttrs});
  return d;
}

std::string join_counts(const std::vector<int>& counts) {
  std::ostringstream out;
  for (std::size_t i = 0; i < counts.size(); ++i) out << (i ? "," : "") << counts[i];
  return out.str();
}

std::string join_combinations(const std::vector<Combination>& combos) {
  std::string out;
  for (std::size_t i = 0; i < combos.size(); ++i) out += (i ? ", " : "") + combination_name(combos[i]);
  return out;
}

bool can_be_multi_predicate(const CaptionSpec& c) {
  return c.patterns.relational > 0 || c.patterns.quantified > 0 || c.patterns.conjunction > 0;
}

void atomic_tags(const DatasetSpec& spec, std::vector<std::string>& out) {
  out.push_back("correct instances");
  out.push_back("incorrect instances");
  out.push_back("C: no hypernyms");
  out.push_back("C: only hypernyms");
  if (can_be_multi_predicate(spec.captions)) out.push_back("C: some hypernyms");
  out.emplace_back(strategy_tag(CorruptionStrategy::kFalseWorld));
  for (const StrategyWeight& s : spec.negatives.strategies) {
    if (s.weight > 0 && s.strategy != CorruptionStrategy::kFalseWorld) out.emplace_back(strategy_tag(s.strategy));
  }
  if (spec.captions.patterns.quantified > 0) {
    for (Quantifier q : spec.captions.quantifiers) out.push_back("instances with " + std::string(quantifier_name(q)));
  }
}

void collect_tags(const DatasetSpec& spec, const std::string& prefix, std::vector<std::string>& out) {
  if (!spec.is_mixer()) {
    std::vector<std::string> base;
    atomic_tags(spec, base);
    for (const auto& t : base) out.push_back(prefix + t);
    return;
  }
  for (const MixComponent& c : spec.components) {
    out.push_back(prefix + c.spec.name);
    collect_tags(c.spec, prefix + c.spec.name + "/", out);
  }
}

// Whether the tag can ever be produced, judged from the configuration alone.
bool reachable(const DatasetSpec& spec, std::string_view tag) {
  if (spec.is_mixer()) {
    const auto slash = tag.find('/');
    const std::string_view head = tag.substr(0, slash);
    for (const MixComponent& c : spec.components) {
      if (c.spec.name != head || c.weight <= 0) continue;
      if (slash == std::string_view::npos || reachable(c.spec, tag.substr(slash + 1))) return true;
    }
    // Unprefixed tags may come from any component.
    if (slash == std::string_view::npos) {
      return std::any_of(spec.components.begin(), spec.components.end(),
                         [&](const MixComponent& c) { return c.weight > 0 && reachable(c.spec, tag); });
    }
    return false;
  }
  const bool positive = tag.starts_with("C: ") || tag == "correct instances";
  const bool negative = tag.starts_with("I: ") || tag == "incorrect instances";
  if (positive && spec.positive_probability <= 0.0) return false;
  if (negative && spec.positive_probability >= 1.0) return false;
  return true;
}

}  // namespace

std::string_view split_name(Split split) { return kSplitNames[static_cast<std::size_t>(split)]; }

std::optional<Split> split_from_name(std::string_view name) {
  for (Split s : kAllSplits) {
    if (split_name(s) == name) return s;
  }
  return std::nullopt;
}

bool operator==(const DatasetSpec& a, const DatasetSpec& b) {
  return a.name == b.name && a.image_size == b.image_size && a.splits == b.splits && a.captions == b.captions &&
         a.negatives == b.negatives && a.positive_probability == b.positive_probability &&
         a.components == b.components && a.partition == b.partition;
}

bool operator==(const MixComponent& a, const MixComponent& b) { return a.spec == b.spec && a.weight == b.weight; }

void DatasetSpec::validate() const {
  if (name.empty()) throw ConfigError("dataset name is empty");
  if (is_mixer()) {
    for (const MixComponent& c : components) {
      if (!(c.weight > 0)) throw ConfigError("mixer weights must be positive");
      if (c.spec.image_size != image_size) throw ConfigError("mixer components disagree on image size");
      c.spec.validate();
    }
    return;
  }
  for (const WorldSpec& w : splits) {
    w.validate();
    if (w.image_size != image_size) throw ConfigError("split image size differs from dataset image size");
  }
  captions.validate();
  if (!(positive_probability >= 0.0 && positive_probability <= 1.0)) {
    throw ConfigError("positive_probability must lie in [0, 1]");
  }
  if (!(negatives.false_world_probability >= 0.0 && negatives.false_world_probability <= 1.0)) {
    throw ConfigError("false_world_probability must lie in [0, 1]");
  }
  for (const StrategyWeight& s : negatives.strategies) {
    if (s.weight < 0) throw ConfigError("negative strategy weight");
  }
  // Held-out sets must not leak between splits.
  for (Split a : kAllSplits) {
    for (Split b : kAllSplits) {
      if (a == b) continue;
      for (Combination c : world_spec(a).required_combinations) {
        const auto& other = world_spec(b);
        if (std::find(other.required_combinations.begin(), other.required_combinations.end(), c) !=
                other.required_combinations.end() ||
            std::find(other.allowed_combinations.begin(), other.allowed_combinations.end(), c) !=
                other.allowed_combinations.end()) {
          throw ConfigError(combination_name(c) + " is held out by " + std::string(split_name(a)) +
                            " but also appears in " + std::string(split_name(b)));
        }
      }
    }
  }
}

const std::vector<Combination>& held_out_combinations(const DatasetSpec& spec, Split split) {
  return spec.world_spec(split).required_combinations;
}

std::vector<Combination> forbidden_combinations(const DatasetSpec& spec, Split split) {
  std::vector<Combination> out;
  for (Split other : kAllSplits) {
    if (other == split) continue;
    const auto& held = held_out_combinations(spec, other);
    out.insert(out.end(), held.begin(), held.end());
  }
  return out;
}

std::vector<int> held_out_counts(const DatasetSpec& spec, Split split) {
  std::vector<int> out;
  for (int c : spec.world_spec(split).count_choices) {
    bool elsewhere = false;
    for (Split other : kAllSplits) {
      const auto& counts = spec.world_spec(other).count_choices;
      if (other != split && std::find(counts.begin(), counts.end(), c) != counts.end()) elsewhere = true;
    }
    if (!elsewhere) out.push_back(c);
  }
  return out;
}

std::vector<std::string> builtin_dataset_names() { return {"oneshape", "multishape", "spatial", "quantification"}; }

DatasetSpec builtin_dataset(std::string_view name) {
  if (name == "oneshape") return oneshape();
  if (name == "multishape") return multishape();
  if (name == "spatial") return spatial();
  if (name == "quantification") return quantification();
  throw UnknownDataset("unknown dataset '" + std::string(name) + "'");
}

std::string describe(const DatasetSpec& spec) {
  std::ostringstream out;
  if (spec.is_mixer()) {
    out << "mixer of";
    for (const MixComponent& c : spec.components) out << ' ' << c.spec.name << " (" << c.weight << ")";
    return out.str();
  }
  const auto& train = spec.world_spec(Split::kTrain);
  out << "objects train {" << join_counts(train.count_choices) << "} validation {"
      << join_counts(spec.world_spec(Split::kValidation).count_choices) << "} test {"
      << join_counts(spec.world_spec(Split::kTest).count_choices) << "}; ";
  out << train.allowed_combinations.size() << " training combinations";
  const auto& val = held_out_combinations(spec, Split::kValidation);
  const auto& test = held_out_combinations(spec, Split::kTest);
  if (!val.empty()) out << "; validation {" << join_combinations(val) << "}";
  if (!test.empty()) out << "; test {" << join_combinations(test) << "}";
  return out.str();
}

DatasetSpec mix(std::vector<DatasetSpec> specs, const std::vector<double>& weights, std::string name) {
  if (specs.empty()) throw ConfigError("mixer needs at least one component");
  if (specs.size() != weights.size()) throw ConfigError("one weight per mixer component");
  DatasetSpec out;
  out.image_size = specs.front().image_size;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (!(weights[i] > 0)) throw ConfigError("mixer weights must be positive");
    if (specs[i].image_size != out.image_size) throw ConfigError("mixer components disagree on image size");
    out.components.push_back({std::move(specs[i]), weights[i]});
  }
  if (name.empty()) {
    for (std::size_t i = 0; i < out.components.size(); ++i) name += (i ? "+" : "") + out.components[i].spec.name;
  }
  out.name = std::move(name);
  for (WorldSpec& w : out.splits) w.image_size = out.image_size;
  return out;
}

std::vector<std::string> known_tags(const DatasetSpec& spec) {
  std::vector<std::string> out;
  collect_tags(spec, "", out);
  if (spec.is_mixer()) {
    // Component-agnostic forms, e.g. "correct instances" across the mixer.
    std::set<std::string> unprefixed;
    for (const MixComponent& c : spec.components) {
      for (const auto& t : known_tags(c.spec)) unprefixed.insert(t);
    }
    out.insert(out.end(), unprefixed.begin(), unprefixed.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

DatasetSpec restrict_partition(DatasetSpec spec, std::string tag) {
  const auto tags = known_tags(spec);
  if (std::find(tags.begin(), tags.end(), tag) == tags.end()) {
    throw UnknownTag("'" + tag + "' is not a partition of " + spec.name);
  }
  if (!reachable(spec, tag)) throw StarvationError("partition '" + tag + "' has probability zero in " + spec.name);
  spec.partition = std::move(tag);
  return spec;
}

DatasetSpec without_noise(DatasetSpec spec) {
  for (WorldSpec& w : spec.splits) w.pixel_noise_sigma = 0.0;
  for (MixComponent& c : spec.components) c.spec = without_noise(std::move(c.spec));
  return spec;
}

std::string granularity_tag(const Caption& caption) {
  const auto preds = predicates(caption);
  const auto hypernyms = std::count_if(preds.begin(), preds.end(), [](const auto& p) { return p.is_hypernym(); });
  if (hypernyms == 0) return "C: no hypernyms";
  if (static_cast<std::size_t>(hypernyms) == preds.size()) return "C: only hypernyms";
  return "C: some hypernyms";
}

}  // namespace microworld
