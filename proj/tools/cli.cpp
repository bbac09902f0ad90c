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

#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>
#include <thread>

#include "microworld/dataset.hpp"
#include "microworld/dataset_io.hpp"
#include "microworld/errors.hpp"
#include "microworld/instance.hpp"
#include "microworld/serialization.hpp"

namespace microworld::cli {
namespace {

struct GenerateArgs {
  std::string dataset;
  std::string split = "train";
  std::uint64_t count = 0;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "jsonl+png";
  std::string partition;
  bool no_noise = false;
  unsigned jobs = 1;
  bool force = false;
};

struct InspectArgs {
  std::string dir;
  std::uint64_t index = 0;
  std::string split = "train";
};

struct DatasetsArgs {
  std::string config;
  std::string tags;
};

int generate(const GenerateArgs& a, std::ostream& out) {
  DatasetSpec spec = load_dataset(a.dataset);
  if (a.no_noise) spec = without_noise(std::move(spec));
  if (!a.partition.empty()) spec = restrict_partition(std::move(spec), a.partition);
  const auto split = split_from_name(a.split);
  if (!split) throw ConfigError("unknown split '" + a.split + "'");
  const auto format = format_from_name(a.format);
  if (!format) throw ConfigError("unknown format '" + a.format + "' (jsonl+png, tensor or both)");

  const auto instances = generate_instances(spec, *split, a.count, a.seed, a.jobs);
  WriteOptions options;
  options.format = *format;
  options.spec = spec;
  options.master_seed = a.seed;
  options.force = a.force;
  const Manifest manifest = write_dataset_dir(instances, a.out, options);
  const auto agree = std::count_if(instances.begin(), instances.end(), [](const Instance& i) { return i.label; });
  out << "wrote " << instances.size() << " " << a.split << " instances of " << spec.name << " to " << a.out << " ("
      << agree << " agreeing, " << manifest.files.size() << " files)\n";
  return 0;
}

int validate(const std::string& dir, std::ostream& out) {
  const ValidationReport report = validate_dataset(dir);
  for (const Violation& v : report.violations) {
    out << v.kind << " " << v.file;
    if (v.index) out << " [" << *v.index << "]";
    out << ": " << v.detail << "\n";
  }
  if (report.ok()) {
    out << "ok: " << report.instances_checked << " instances checked\n";
    return 0;
  }
  out << report.violations.size() << " violation(s)\n";
  return 1;
}

int inspect(const InspectArgs& a, std::ostream& out) {
  const Manifest manifest = read_manifest(a.dir);
  if (!manifest.splits.count(a.split)) throw IoError("split '" + a.split + "' not present in " + a.dir);
  if (manifest.format == ExportFormat::kTensor) throw IoError("inspect needs the jsonl records; directory is tensor-only");
  std::ifstream in(std::filesystem::path(a.dir) / (a.split + ".jsonl"));
  if (!in) throw IoError("cannot read " + a.split + ".jsonl in " + a.dir);
  std::string line;
  while (std::getline(in, line)) {
    const auto record = nlohmann::json::parse(line);
    if (record.at("index").get<std::uint64_t>() != a.index) continue;
    out << "caption: " << record.at("caption").get<std::string>() << "\n";
    out << "label: " << (record.at("label").get<bool>() ? "agree" : "disagree") << "\n";
    out << "partition: " << record.at("partition_tag").get<std::string>() << "\n";
    out << "sub_seed: " << record.at("sub_seed").get<std::uint64_t>() << "\n";
    out << "ast: " << record.at("ast").dump() << "\n";
    out << "world: " << record.at("world").dump(2) << "\n";
    return 0;
  }
  throw IoError("no instance with index " + std::to_string(a.index) + " in split " + a.split);
}

int datasets(const DatasetsArgs& a, std::ostream& out) {
  if (!a.config.empty()) {
    out << dataset_to_json(load_dataset(a.config)).dump(2) << "\n";
    return 0;
  }
  if (!a.tags.empty()) {
    for (const std::string& tag : known_tags(load_dataset(a.tags))) out << tag << "\n";
    return 0;
  }
  for (const std::string& name : builtin_dataset_names()) out << name << ": " << describe(builtin_dataset(name)) << "\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generate and check image-caption agreement datasets"};
  app.require_subcommand(1);

  GenerateArgs g;
  auto* gen = app.add_subcommand("generate", "Generate instances into a dataset directory");
  gen->add_option("--dataset", g.dataset, "Built-in name, config file or manifest.json")->required();
  gen->add_option("--split", g.split, "train, validation or test");
  gen->add_option("--count", g.count, "Number of instances")->required();
  gen->add_option("--seed", g.seed, "Master seed")->required();
  gen->add_option("--out", g.out, "Output directory")->required();
  gen->add_option("--format", g.format, "jsonl+png, tensor or both");
  gen->add_option("--partition", g.partition, "Only emit instances carrying this tag");
  gen->add_flag("--no-noise", g.no_noise, "Disable pixel noise");
  gen->add_option("--jobs", g.jobs, "Worker threads")->check(CLI::PositiveNumber);
  gen->add_flag("--force", g.force, "Replace a directory holding a different dataset");

  std::string validate_dir;
  auto* val = app.add_subcommand("validate", "Re-check digests, labels and captions of a dataset directory");
  val->add_option("dir", validate_dir)->required();

  InspectArgs i;
  auto* ins = app.add_subcommand("inspect", "Print one stored instance");
  ins->add_option("dir", i.dir)->required();
  ins->add_option("--index", i.index)->required();
  ins->add_option("--split", i.split);

  DatasetsArgs d;
  auto* dsets = app.add_subcommand("datasets", "List built-in datasets and their split constraints");
  dsets->add_option("--config", d.config, "Print the full configuration of a dataset");
  dsets->add_option("--tags", d.tags, "List the partition tags of a dataset");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*gen) return generate(g, out);
    if (*val) return validate(validate_dir, out);
    if (*ins) return inspect(i, out);
    if (*dsets) return datasets(d, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace microworld::cli
