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

#include <gtest/gtest.h>

#include <algorithm>

#include "microworld/errors.hpp"

namespace microworld {
namespace {

using Combos = std::vector<Combination>;

Combination combo(std::string_view name) { return *combination_from_name(name); }

std::vector<int> counts(const DatasetSpec& ds, Split s) { return ds.world_spec(s).count_choices; }

bool contains_tag(const std::vector<std::string>& tags, std::string_view tag) {
  return std::find(tags.begin(), tags.end(), tag) != tags.end();
}

TEST(Builtins, Names) {
  EXPECT_EQ(builtin_dataset_names(), (std::vector<std::string>{"oneshape", "multishape", "spatial", "quantification"}));
  EXPECT_THROW(builtin_dataset("shapes"), UnknownDataset);
  for (const auto& name : builtin_dataset_names()) EXPECT_NO_THROW(builtin_dataset(name).validate()) << name;
}

TEST(Builtins, OneShapeCombinationSplits) {
  const DatasetSpec ds = builtin_dataset("oneshape");
  EXPECT_EQ(all_combinations().size(), 56u);
  EXPECT_EQ(ds.world_spec(Split::kTrain).allowed_combinations.size(), 50u);
  EXPECT_TRUE(ds.world_spec(Split::kTrain).required_combinations.empty());
  EXPECT_EQ(held_out_combinations(ds, Split::kValidation),
            (Combos{combo("red square"), combo("green triangle"), combo("blue circle")}));
  EXPECT_EQ(held_out_combinations(ds, Split::kTest),
            (Combos{combo("yellow rectangle"), combo("cyan ellipse"), combo("magenta cross")}));
  for (Split s : kAllSplits) EXPECT_EQ(counts(ds, s), (std::vector<int>{1}));
  for (const Combination& c : ds.world_spec(Split::kTrain).allowed_combinations) {
    EXPECT_FALSE(std::count(ds.world_spec(Split::kValidation).required_combinations.begin(),
                            ds.world_spec(Split::kValidation).required_combinations.end(), c));
    EXPECT_FALSE(std::count(ds.world_spec(Split::kTest).required_combinations.begin(),
                            ds.world_spec(Split::kTest).required_combinations.end(), c));
  }
  EXPECT_EQ(ds.captions.patterns.existential, 1.0);
  EXPECT_EQ(ds.captions.patterns.relational + ds.captions.patterns.quantified + ds.captions.patterns.conjunction, 0.0);
}

TEST(Builtins, MultiShapeCounts) {
  const DatasetSpec ds = builtin_dataset("multishape");
  EXPECT_EQ(counts(ds, Split::kTrain), (std::vector<int>{1, 2, 3, 5}));
  EXPECT_EQ(counts(ds, Split::kValidation), (std::vector<int>{4}));
  EXPECT_EQ(counts(ds, Split::kTest), (std::vector<int>{6}));
  EXPECT_EQ(held_out_counts(ds, Split::kTest), (std::vector<int>{6}));
  EXPECT_TRUE(held_out_combinations(ds, Split::kTest).empty());
  EXPECT_EQ(ds.captions, builtin_dataset("oneshape").captions);
}

TEST(Builtins, SpatialSharesOneShapeCombinations) {
  const DatasetSpec sp = builtin_dataset("spatial");
  const DatasetSpec one = builtin_dataset("oneshape");
  for (Split s : kAllSplits) {
    EXPECT_EQ(sp.world_spec(s).allowed_combinations, one.world_spec(s).allowed_combinations);
    EXPECT_EQ(sp.world_spec(s).required_combinations, one.world_spec(s).required_combinations);
    EXPECT_EQ(counts(sp, s), (std::vector<int>{2, 3, 4}));
  }
  EXPECT_EQ(sp.captions.relations.size(), 4u);
  EXPECT_EQ(sp.captions.patterns.relational, 1.0);
}

TEST(Builtins, QuantificationCountsAndQuantifiers) {
  const DatasetSpec ds = builtin_dataset("quantification");
  EXPECT_EQ(counts(ds, Split::kTrain), (std::vector<int>{3, 4, 5, 7}));
  EXPECT_EQ(counts(ds, Split::kValidation), (std::vector<int>{6}));
  EXPECT_EQ(counts(ds, Split::kTest), (std::vector<int>{8}));
  EXPECT_EQ(ds.captions.quantifiers.size(), 6u);
  for (Quantifier q : kAllQuantifiers) {
    EXPECT_TRUE(std::count(ds.captions.quantifiers.begin(), ds.captions.quantifiers.end(), q));
  }
}

TEST(Builtins, DefaultsForNegativesAndLabels) {
  for (const auto& name : builtin_dataset_names()) {
    const DatasetSpec ds = builtin_dataset(name);
    EXPECT_EQ(ds.positive_probability, 0.5);
    EXPECT_EQ(ds.negatives.false_world_probability, 0.5);
    EXPECT_EQ(ds.image_size, 64);
  }
}

TEST(Forbidden, OtherSplitsHeldOutSets) {
  const DatasetSpec ds = builtin_dataset("oneshape");
  EXPECT_EQ(forbidden_combinations(ds, Split::kTrain).size(), 6u);
  EXPECT_EQ(forbidden_combinations(ds, Split::kValidation), held_out_combinations(ds, Split::kTest));
}

TEST(Validate, HeldOutLeakIsRejected) {
  DatasetSpec ds = builtin_dataset("oneshape");
  ds.world_spec(Split::kTrain).allowed_combinations.push_back(combo("red square"));
  EXPECT_THROW(ds.validate(), ConfigError);
  DatasetSpec ds2 = builtin_dataset("oneshape");
  ds2.world_spec(Split::kTest).required_combinations.push_back(combo("red square"));
  EXPECT_THROW(ds2.validate(), ConfigError);
  DatasetSpec ds3 = builtin_dataset("oneshape");
  ds3.positive_probability = 1.5;
  EXPECT_THROW(ds3.validate(), ConfigError);
}

TEST(Describe, MentionsCountsAndHeldOutSets) {
  const std::string one = describe(builtin_dataset("oneshape"));
  EXPECT_NE(one.find("50 training combinations"), std::string::npos);
  EXPECT_NE(one.find("yellow rectangle"), std::string::npos);
  const std::string q = describe(builtin_dataset("quantification"));
  EXPECT_NE(q.find("train {3,4,5,7}"), std::string::npos);
  EXPECT_NE(q.find("test {8}"), std::string::npos);
}

TEST(Mix, NamesWeightsAndErrors) {
  const DatasetSpec m = mix({builtin_dataset("oneshape"), builtin_dataset("spatial")}, {1, 3});
  EXPECT_EQ(m.name, "oneshape+spatial");
  EXPECT_TRUE(m.is_mixer());
  EXPECT_NO_THROW(m.validate());
  EXPECT_THROW(mix({builtin_dataset("oneshape")}, {0}), ConfigError);
  EXPECT_THROW(mix({builtin_dataset("oneshape")}, {1, 1}), ConfigError);
  EXPECT_THROW(mix({}, {}), ConfigError);
  DatasetSpec big = builtin_dataset("spatial");
  big.image_size = 128;
  EXPECT_THROW(mix({builtin_dataset("oneshape"), big}, {1, 1}), ConfigError);
  EXPECT_EQ(mix({builtin_dataset("oneshape")}, {2}, "solo").name, "solo");
}

TEST(KnownTags, AtomicDatasets) {
  const auto one = known_tags(builtin_dataset("oneshape"));
  EXPECT_TRUE(contains_tag(one, "C: only hypernyms"));
  EXPECT_TRUE(contains_tag(one, "C: no hypernyms"));
  EXPECT_FALSE(contains_tag(one, "C: some hypernyms"));
  EXPECT_TRUE(contains_tag(one, "I: changed shape"));
  EXPECT_TRUE(contains_tag(one, "I: false world"));
  EXPECT_FALSE(contains_tag(one, "I: swapped direction"));
  EXPECT_TRUE(contains_tag(one, "correct instances"));
  const auto sp = known_tags(builtin_dataset("spatial"));
  EXPECT_TRUE(contains_tag(sp, "I: swapped direction"));
  EXPECT_TRUE(contains_tag(sp, "C: some hypernyms"));
  const auto q = known_tags(builtin_dataset("quantification"));
  EXPECT_TRUE(contains_tag(q, "instances with most"));
  EXPECT_TRUE(contains_tag(q, "instances with the"));
  EXPECT_FALSE(contains_tag(one, "instances with most"));
}

TEST(KnownTags, MixerPrefixes) {
  const auto tags = known_tags(mix({builtin_dataset("oneshape"), builtin_dataset("spatial")}, {1, 1}));
  EXPECT_TRUE(contains_tag(tags, "spatial"));
  EXPECT_TRUE(contains_tag(tags, "spatial/I: swapped direction"));
  EXPECT_TRUE(contains_tag(tags, "oneshape/C: no hypernyms"));
  EXPECT_TRUE(contains_tag(tags, "I: swapped direction"));
  EXPECT_FALSE(contains_tag(tags, "oneshape/I: swapped direction"));
}

TEST(RestrictPartition, KnownTagsOnly) {
  EXPECT_EQ(restrict_partition(builtin_dataset("spatial"), "I: swapped direction").partition, "I: swapped direction");
  EXPECT_THROW(restrict_partition(builtin_dataset("oneshape"), "I: swapped direction"), UnknownTag);
  EXPECT_THROW(restrict_partition(builtin_dataset("oneshape"), "nonsense"), UnknownTag);
  DatasetSpec all_true = builtin_dataset("oneshape");
  all_true.positive_probability = 1.0;
  EXPECT_THROW(restrict_partition(all_true, "I: changed shape"), StarvationError);
  EXPECT_THROW(restrict_partition(all_true, "incorrect instances"), StarvationError);
}

TEST(WithoutNoise, ClearsEverySplitRecursively) {
  const DatasetSpec m = without_noise(mix({builtin_dataset("oneshape"), builtin_dataset("spatial")}, {1, 1}));
  for (const auto& c : m.components) {
    for (Split s : kAllSplits) EXPECT_EQ(c.spec.world_spec(s).pixel_noise_sigma, 0.0);
  }
  EXPECT_EQ(builtin_dataset("oneshape").world_spec(Split::kTrain).pixel_noise_sigma, 0.1);
}

TEST(GranularityTag, CountsHypernyms) {
  EXPECT_EQ(granularity_tag(Existential{{ShapeKind::kSquare, Color::kRed}}), "C: no hypernyms");
  EXPECT_EQ(granularity_tag(Existential{{ShapeKind::kSquare, std::nullopt}}), "C: no hypernyms");
  EXPECT_EQ(granularity_tag(Existential{{std::nullopt, Color::kRed}}), "C: only hypernyms");
  EXPECT_EQ(granularity_tag(Relational{{std::nullopt, Color::kRed}, Relation::kAbove, {ShapeKind::kCross, std::nullopt}}),
            "C: some hypernyms");
}

TEST(Splits, Names) {
  for (Split s : kAllSplits) EXPECT_EQ(split_from_name(split_name(s)), s);
  EXPECT_FALSE(split_from_name("dev").has_value());
}

}  // namespace
}  // namespace microworld
