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

#include "microworld/instance.hpp"

#include <algorithm>
#include <exception>
#include <thread>

#include "microworld/errors.hpp"
#include "microworld/language.hpp"
#include "microworld/semantics.hpp"

namespace microworld {
namespace {

// Round constants separating the auxiliary streams from the instance stream.
constexpr std::uint64_t kRestrictStream = 0x5245535452494354ULL;
constexpr std::uint64_t kMixStream = 0x4d49584552000000ULL;

struct Draft {
  WorldModel world;
  Caption caption;
  std::string tag;
};

std::string context(const DatasetSpec& spec, Split split, std::uint64_t index) {
  return spec.name + " " + std::string(split_name(split)) + "[" + std::to_string(index) + "]";
}

CorruptionStrategy pick_strategy(const NegativeSpec& negatives, const Caption& caption, Rng& rng) {
  std::vector<CorruptionStrategy> options;
  std::vector<double> weights;
  for (const StrategyWeight& s : negatives.strategies) {
    if (s.weight <= 0 || s.strategy == CorruptionStrategy::kFalseWorld) continue;
    if (!is_applicable(s.strategy, caption)) continue;
    options.push_back(s.strategy);
    weights.push_back(s.weight);
  }
  if (options.empty() || bernoulli(rng, negatives.false_world_probability)) return CorruptionStrategy::kFalseWorld;
  return options[weighted_index(rng, weights)];
}

std::optional<Draft> try_draft(const DatasetSpec& spec, Split split, bool label, Rng& rng) {
  const WorldSpec& world_spec = spec.world_spec(split);
  Draft d;
  d.world = sample_world(world_spec, rng);
  const CaptionConstraints constraints{held_out_combinations(spec, split), forbidden_combinations(spec, split)};
  try {
    d.caption = sample_caption(d.world, spec.captions, rng, constraints);
  } catch (const UnsatisfiableCaption&) {
    return std::nullopt;
  }
  if (label) {
    d.tag = granularity_tag(d.caption);
    return d;
  }
  CorruptionStrategy strategy = pick_strategy(spec.negatives, d.caption, rng);
  if (strategy != CorruptionStrategy::kFalseWorld) {
    try {
      d.caption = corrupt_caption(d.caption, d.world, strategy, rng, constraints.forbidden);
    } catch (const NoFalseVariant&) {
      strategy = CorruptionStrategy::kFalseWorld;
    }
  }
  if (strategy == CorruptionStrategy::kFalseWorld) {
    try {
      d.world = make_false_world(d.caption, world_spec, rng);
    } catch (const ExhaustionError&) {
      return std::nullopt;
    }
  }
  d.tag = std::string(strategy_tag(strategy));
  return d;
}

Instance generate_plain(const DatasetSpec& spec, Split split, std::uint64_t index, std::uint64_t sub_seed) {
  Rng rng(sub_seed);
  const bool label = bernoulli(rng, spec.positive_probability);
  for (int attempt = 0; attempt < kMaxInstanceAttempts; ++attempt) {
    std::optional<Draft> draft;
    try {
      draft = try_draft(spec, split, label, rng);
    } catch (const GenerationError& e) {
      throw GenerationError(context(spec, split, index) + ": " + e.what());
    }
    if (!draft) continue;
    Instance inst;
    inst.image = render(draft->world, spec.image_size, rng);
    inst.caption_text = realize(draft->caption);
    inst.caption = std::move(draft->caption);
    inst.world = std::move(draft->world);
    inst.label = label;
    inst.partition_tag = std::move(draft->tag);
    inst.sub_seed = sub_seed;
    inst.split = split;
    inst.index = index;
    if (evaluate(inst.caption, inst.world) != label) {
      throw GenerationError(context(spec, split, index) + ": caption disagrees with its label");
    }
    return inst;
  }
  throw GenerationError(context(spec, split, index) + ": no instance within " +
                        std::to_string(kMaxInstanceAttempts) + " attempts");
}

Instance generate_seeded(const DatasetSpec& spec, Split split, std::uint64_t index, std::uint64_t sub_seed);

Instance generate_unrestricted(const DatasetSpec& spec, Split split, std::uint64_t index, std::uint64_t sub_seed) {
  if (!spec.is_mixer()) return generate_plain(spec, split, index, sub_seed);
  Rng chooser(mix64(sub_seed, kMixStream, 0));
  std::vector<double> weights;
  weights.reserve(spec.components.size());
  for (const MixComponent& c : spec.components) weights.push_back(c.weight);
  const MixComponent& chosen = spec.components[weighted_index(chooser, weights)];
  Instance inst = generate_seeded(chosen.spec, split, index, sub_seed);
  inst.partition_tag = chosen.spec.name + "/" + inst.partition_tag;
  return inst;
}

// Restricted specs reject candidates until one carries the partition tag.
// Candidate k > 0 uses a derived seed, which is what the instance records.
Instance generate_seeded(const DatasetSpec& spec, Split split, std::uint64_t index, std::uint64_t sub_seed) {
  if (!spec.partition) return generate_unrestricted(spec, split, index, sub_seed);
  for (int attempt = 0; attempt < kMaxPartitionAttempts; ++attempt) {
    const std::uint64_t seed = attempt == 0 ? sub_seed : mix64(sub_seed, kRestrictStream, attempt);
    Instance inst = generate_unrestricted(spec, split, index, seed);
    const auto tags = instance_tags(inst);
    if (std::find(tags.begin(), tags.end(), *spec.partition) != tags.end()) return inst;
  }
  throw StarvationError(context(spec, split, index) + ": no '" + *spec.partition + "' instance within " +
                        std::to_string(kMaxPartitionAttempts) + " candidates");
}

void collect_quantifiers(const Caption& caption, std::vector<Quantifier>& out) {
  if (caption.is<Quantified>()) {
    out.push_back(caption.as<Quantified>().quantifier);
  } else if (caption.is<Conjunction>()) {
    collect_quantifiers(*caption.as<Conjunction>().left, out);
    collect_quantifiers(*caption.as<Conjunction>().right, out);
  }
}

std::string join(const std::vector<std::string>& parts, std::size_t first, std::size_t last) {
  std::string out;
  for (std::size_t i = first; i < last; ++i) out += (i > first ? "/" : "") + parts[i];
  return out;
}

}  // namespace

Instance generate_instance(const DatasetSpec& spec, Split split, std::uint64_t index, std::uint64_t master_seed) {
  return generate_seeded(spec, split, index, instance_seed(master_seed, split, index));
}

std::vector<Instance> generate_instances(const DatasetSpec& spec, Split split, std::uint64_t count,
                                         std::uint64_t master_seed, unsigned jobs, std::uint64_t first_index) {
  std::vector<Instance> out(count);
  jobs = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::uint64_t>(count, 1))));
  if (jobs == 1) {
    for (std::uint64_t i = 0; i < count; ++i) out[i] = generate_instance(spec, split, first_index + i, master_seed);
    return out;
  }
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (unsigned w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w] {
      try {
        for (std::uint64_t i = w; i < count; i += jobs) {
          out[i] = generate_instance(spec, split, first_index + i, master_seed);
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (std::thread& t : workers) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::vector<std::string> instance_tags(const Instance& instance) {
  std::vector<std::string> path;
  std::string base = instance.partition_tag;
  for (auto slash = base.find('/'); slash != std::string::npos; slash = base.find('/')) {
    path.push_back(base.substr(0, slash));
    base.erase(0, slash + 1);
  }

  std::vector<std::string> leaves = {base, instance.label ? "correct instances" : "incorrect instances"};
  std::vector<Quantifier> quantifiers;
  collect_quantifiers(instance.caption, quantifiers);
  for (Quantifier q : quantifiers) leaves.push_back("instances with " + std::string(quantifier_name(q)));

  std::vector<std::string> out;
  for (std::size_t start = 0; start <= path.size(); ++start) {
    const std::string prefix = join(path, start, path.size());
    for (const auto& leaf : leaves) out.push_back(prefix.empty() ? leaf : prefix + "/" + leaf);
    for (std::size_t end = start + 1; end <= path.size(); ++end) out.push_back(join(path, start, end));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace microworld
