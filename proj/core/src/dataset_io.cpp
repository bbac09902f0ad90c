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

#include "microworld/dataset_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "microworld/errors.hpp"
#include "microworld/language.hpp"
#include "microworld/semantics.hpp"
#include "microworld/serialization.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace microworld {
namespace {

constexpr std::array<std::pair<ExportFormat, std::string_view>, 3> kFormatNames = {{
    {ExportFormat::kJsonlPng, "jsonl+png"},
    {ExportFormat::kTensor, "tensor"},
    {ExportFormat::kBoth, "both"},
}};

bool has_jsonl(ExportFormat f) { return f != ExportFormat::kTensor; }
bool has_tensor(ExportFormat f) { return f != ExportFormat::kJsonlPng; }

std::string jsonl_file(std::string_view split) { return std::string(split) + ".jsonl"; }

std::string png_file(std::string_view split, std::uint64_t index) {
  return std::string(split) + "_" + std::to_string(index) + ".png";
}

std::span<const std::uint8_t> as_bytes(const std::string& s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

// Files of a split: the jsonl, its PNGs and the tensor archive.
bool belongs_to_split(const std::string& file, const std::string& split) {
  return file == jsonl_file(split) || file == images_file(split) || file == captions_file(split) ||
         file == labels_file(split) || (file.starts_with(split + "_") && file.ends_with(".png"));
}

std::vector<std::uint32_t> token_ids(const std::string& caption) {
  std::vector<std::uint32_t> ids;
  for (const std::string& t : tokenize(caption)) ids.push_back(*token_id(t));
  return ids;
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int shift = 0; shift < 32; shift += 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

std::uint32_t get_u32(const std::vector<std::uint8_t>& in, std::size_t offset) {
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | in[offset + i];
  return v;
}

constexpr const char* kSelfDigestKey = "manifest_sha256";

// Digest of the manifest's compact dump without its own digest field.
std::string self_digest(json j) {
  j.erase(kSelfDigestKey);
  return sha256_hex(as_bytes(j.dump()));
}

std::string vocabulary_text() {
  std::string out;
  for (const std::string& t : vocabulary()) out += t + "\n";
  return out;
}

class Writer {
 public:
  Writer(fs::path dir, Manifest& manifest) : dir_(std::move(dir)), manifest_(manifest) {}

  void put(const std::string& name, std::span<const std::uint8_t> bytes) {
    write_file(dir_ / name, bytes);
    manifest_.files[name] = sha256_hex(bytes);
  }

 private:
  fs::path dir_;
  Manifest& manifest_;
};

void write_split(const std::string& split, const std::vector<const Instance*>& items, ExportFormat format,
                 int image_size, Writer& writer, Manifest& manifest) {
  SplitSummary summary;
  summary.count = items.size();
  std::vector<std::vector<std::uint32_t>> ids;
  for (const Instance* inst : items) {
    ids.push_back(token_ids(inst->caption_text));
    summary.caption_length = std::max<std::uint64_t>(summary.caption_length, ids.back().size());
  }
  if (has_jsonl(format)) {
    std::string lines;
    for (const Instance* inst : items) {
      lines += instance_record(*inst).dump() + "\n";
      writer.put(png_file(split, inst->index), encode_png(inst->image));
    }
    writer.put(jsonl_file(split), as_bytes(lines));
  }
  if (has_tensor(format)) {
    std::vector<std::uint8_t> images;
    std::vector<std::uint8_t> captions;
    std::vector<std::uint8_t> labels;
    images.reserve(items.size() * image_size * image_size * Image::kChannels);
    for (std::size_t i = 0; i < items.size(); ++i) {
      const Image& img = items[i]->image;
      if (img.width != image_size || img.height != image_size) throw IoError("instance image size mismatch");
      images.insert(images.end(), img.pixels.begin(), img.pixels.end());
      for (std::uint64_t k = 0; k < summary.caption_length; ++k) put_u32(captions, k < ids[i].size() ? ids[i][k] : 0);
      labels.push_back(items[i]->label ? 1 : 0);
    }
    writer.put(images_file(split), images);
    writer.put(captions_file(split), captions);
    writer.put(labels_file(split), labels);
  }
  manifest.splits[split] = summary;
}

void write_manifest(const fs::path& dir, const Manifest& manifest) {
  write_file(dir / std::string(kManifestFile), as_bytes(manifest.to_json().dump(2) + "\n"));
}

// ---------------------------------------------------------------------------
// Validation

struct Record {
  Caption ast;
  WorldModel world;
  std::string caption;
  bool label = false;
  std::uint64_t index = 0;
};

class Checker {
 public:
  Checker(fs::path dir, Manifest manifest) : dir_(std::move(dir)), manifest_(std::move(manifest)) {}

  ValidationReport run() {
    check_digests();
    check_vocabulary();
    for (const auto& [split, summary] : manifest_.splits) check_split(split, summary);
    return finish();
  }

 private:
  void add(std::string kind, std::string file, std::optional<std::uint64_t> index, std::string detail) {
    found_.push_back({std::move(kind), std::move(file), index, std::move(detail)});
  }

  // Cross-file mismatches are blamed on whichever side was modified.
  std::string blame(const std::string& a, const std::string& b) const {
    return tampered_.count(b) && !tampered_.count(a) ? b : a;
  }

  std::optional<std::vector<std::uint8_t>> load(const std::string& name) {
    try {
      return read_file(dir_ / name);
    } catch (const IoError&) {
      return std::nullopt;
    }
  }

  void check_digests() {
    for (const auto& [name, digest] : manifest_.files) {
      const auto bytes = load(name);
      if (!bytes) {
        missing_.insert(name);
        add("missing-file", name, std::nullopt, "listed in the manifest but absent");
      } else if (sha256_hex(*bytes) != digest) {
        tampered_.insert(name);
      }
    }
  }

  void check_vocabulary() {
    if (manifest_.vocabulary.empty()) return;
    const auto bytes = load(manifest_.vocabulary);
    if (bytes && std::string(bytes->begin(), bytes->end()) != vocabulary_text()) {
      add("vocabulary-mismatch", manifest_.vocabulary, std::nullopt, "differs from the built-in vocabulary");
    }
  }

  std::optional<Record> parse_record(const std::string& file, const std::string& line, std::uint64_t position) {
    Record r;
    try {
      const json j = json::parse(line);
      r.ast = caption_from_json(j.at("ast"));
      r.world = world_from_json(j.at("world"));
      r.caption = j.at("caption").get<std::string>();
      r.label = j.at("label").get<bool>();
      r.index = j.at("index").get<std::uint64_t>();
      if (r.index != position) throw IoError("index " + std::to_string(r.index) + " on line " + std::to_string(position));
      j.at("partition_tag").get<std::string>();
      j.at("sub_seed").get<std::uint64_t>();
    } catch (const std::exception& e) {
      add("malformed-record", file, position, e.what());
      return std::nullopt;
    }
    try {
      if (!(parse(r.caption) == r.ast)) {
        add("caption-mismatch", file, r.index, "caption text does not parse to the stored ast");
        return std::nullopt;
      }
    } catch (const Error& e) {
      add("parse-failure", file, r.index, e.what());
      return std::nullopt;
    }
    if (evaluate(r.ast, r.world) != r.label) {
      add("label-mismatch", file, r.index, "stored label disagrees with evaluate(ast, world)");
      return std::nullopt;
    }
    return r;
  }

  void check_split(const std::string& split, const SplitSummary& summary) {
    std::vector<std::optional<Record>> records;
    std::vector<std::optional<Image>> images;
    const bool jsonl = has_jsonl(manifest_.format);
    const std::string jname = jsonl_file(split);
    if (jsonl && !missing_.count(jname)) {
      const auto bytes = load(jname);
      std::istringstream in(std::string(bytes->begin(), bytes->end()));
      std::string line;
      const std::size_t before = found_.size();
      for (std::uint64_t pos = 0; std::getline(in, line); ++pos) {
        records.push_back(parse_record(jname, line, pos));
        if (!records.back()) {
          images.emplace_back();
          continue;
        }
        ++checked_;
        images.push_back(check_png(png_file(split, records.back()->index), records.back()->index));
      }
      if (records.size() != summary.count && found_.size() == before) {
        add("count-mismatch", jname, std::nullopt,
            std::to_string(records.size()) + " records, manifest says " + std::to_string(summary.count));
      }
    }
    if (!has_tensor(manifest_.format)) return;
    const bool aligned = jsonl && records.size() == summary.count;
    check_tensors(split, summary, aligned ? &records : nullptr, aligned ? &images : nullptr);
  }

  std::optional<Image> check_png(const std::string& name, std::uint64_t index) {
    if (missing_.count(name)) return std::nullopt;
    if (!manifest_.files.count(name)) {
      add("missing-file", name, index, "record has no listed image");
      return std::nullopt;
    }
    try {
      Image img = decode_png(*load(name));
      if (img.width != manifest_.image_size || img.height != manifest_.image_size) {
        add("image-size", name, index, "unexpected dimensions");
        return std::nullopt;
      }
      return img;
    } catch (const IoError& e) {
      add("png-decode", name, index, e.what());
      return std::nullopt;
    }
  }

  void check_tensors(const std::string& split, const SplitSummary& summary,
                     const std::vector<std::optional<Record>>* records,
                     const std::vector<std::optional<Image>>* pngs) {
    const std::uint64_t n = summary.count;
    const std::uint64_t len = summary.caption_length;
    const std::uint64_t pixels = static_cast<std::uint64_t>(manifest_.image_size) * manifest_.image_size * Image::kChannels;
    const std::string iname = images_file(split), cname = captions_file(split), lname = labels_file(split);
    const auto sized = [&](const std::string& name, std::uint64_t expected) -> std::optional<std::vector<std::uint8_t>> {
      if (missing_.count(name)) return std::nullopt;
      auto bytes = load(name);
      if (bytes->size() != expected) {
        add("tensor-size", name, std::nullopt,
            std::to_string(bytes->size()) + " bytes, expected " + std::to_string(expected));
        return std::nullopt;
      }
      return bytes;
    };
    const auto images = sized(iname, n * pixels);
    const auto captions = sized(cname, n * len * 4);
    const auto labels = sized(lname, n);
    const auto& vocab = vocabulary();
    const std::string jname = jsonl_file(split);

    for (std::uint64_t i = 0; i < n; ++i) {
      const Record* rec = records && (*records)[i] ? &*(*records)[i] : nullptr;
      if (captions) {
        std::string text;
        bool ok = true;
        for (std::uint64_t k = 0; k < len; ++k) {
          const std::uint32_t id = get_u32(*captions, (i * len + k) * 4);
          if (id >= vocab.size()) {
            add("token-range", cname, i, "token id " + std::to_string(id) + " outside the vocabulary");
            ok = false;
            break;
          }
          if (id == 0) continue;
          text += (text.empty() ? "" : " ") + vocab[id];
        }
        if (ok) {
          try {
            const Caption decoded = parse(text);
            if (rec && !(decoded == rec->ast)) add("caption-mismatch", blame(cname, jname), i, "tensor caption differs");
          } catch (const Error& e) {
            add("parse-failure", cname, i, e.what());
          }
        }
      }
      if (labels) {
        const std::uint8_t v = (*labels)[i];
        if (v > 1) {
          add("label-range", lname, i, "label byte " + std::to_string(v));
        } else if (rec && (v == 1) != rec->label) {
          add("label-mismatch", blame(lname, jname), i, "tensor label differs");
        }
      }
      if (images && pngs && (*pngs)[i]) {
        const auto begin = images->begin() + static_cast<std::ptrdiff_t>(i * pixels);
        if (!std::equal(begin, begin + static_cast<std::ptrdiff_t>(pixels), (*pngs)[i]->pixels.begin())) {
          add("image-mismatch", blame(iname, png_file(split, rec ? rec->index : i)), i, "tensor image differs from png");
        }
      }
    }
  }

  ValidationReport finish() {
    ValidationReport report;
    report.instances_checked = checked_;
    std::set<std::pair<std::string, std::optional<std::uint64_t>>> seen;
    std::set<std::string> with_content;
    std::map<std::string, std::size_t> first_in_tampered;
    for (Violation& v : found_) {
      if (!seen.insert({v.file, v.index}).second) continue;
      with_content.insert(v.file);
      // A modified file is reported once, by its first content violation.
      if (tampered_.count(v.file)) {
        auto [it, fresh] = first_in_tampered.try_emplace(v.file, report.violations.size());
        if (!fresh) {
          ++extra_[v.file];
          continue;
        }
      }
      report.violations.push_back(std::move(v));
    }
    for (const auto& [file, pos] : first_in_tampered) {
      if (extra_.count(file)) {
        report.violations[pos].detail += " (+" + std::to_string(extra_[file]) + " more in this file)";
      }
    }
    for (const std::string& name : tampered_) {
      if (!with_content.count(name)) {
        report.violations.push_back({"digest-mismatch", name, std::nullopt, "sha256 differs from the manifest"});
      }
    }
    return report;
  }

  fs::path dir_;
  Manifest manifest_;
  std::set<std::string> tampered_;
  std::set<std::string> missing_;
  std::vector<Violation> found_;
  std::map<std::string, std::uint64_t> extra_;
  std::uint64_t checked_ = 0;
};

}  // namespace

std::string_view format_name(ExportFormat format) {
  for (const auto& [f, name] : kFormatNames) {
    if (f == format) return name;
  }
  return "?";
}

std::optional<ExportFormat> format_from_name(std::string_view name) {
  for (const auto& [f, n] : kFormatNames) {
    if (n == name) return f;
  }
  return std::nullopt;
}

std::string images_file(std::string_view split) { return std::string(split) + "_images.u8"; }
std::string captions_file(std::string_view split) { return std::string(split) + "_captions.u32"; }
std::string labels_file(std::string_view split) { return std::string(split) + "_labels.u8"; }

std::uint64_t Manifest::instance_count() const {
  std::uint64_t total = 0;
  for (const auto& [name, s] : splits) total += s.count;
  return total;
}

json Manifest::to_json() const {
  json split_json = json::object();
  for (const auto& [name, s] : splits) split_json[name] = {{"count", s.count}, {"caption_length", s.caption_length}};
  json j = {
      {"format_version", format_version}, {"dataset", dataset},
      {"config", config},                 {"master_seed", master_seed},
      {"format", format_name(format)},    {"image_size", image_size},
      {"splits", split_json},             {"vocabulary", vocabulary},
      {"files", files},
  };
  j[kSelfDigestKey] = self_digest(j);
  return j;
}

Manifest Manifest::from_json(const json& j) {
  Manifest m;
  try {
    m.format_version = j.at("format_version").get<int>();
    if (m.format_version != kManifestFormatVersion) {
      throw IoError("unsupported manifest format_version " + std::to_string(m.format_version));
    }
    m.dataset = j.at("dataset").get<std::string>();
    m.config = j.at("config");
    m.master_seed = j.at("master_seed").get<std::uint64_t>();
    const auto format = format_from_name(j.at("format").get<std::string>());
    if (!format) throw IoError("unknown export format in manifest");
    m.format = *format;
    m.image_size = j.at("image_size").get<int>();
    for (const auto& [name, s] : j.at("splits").items()) {
      m.splits[name] = {s.at("count").get<std::uint64_t>(), s.at("caption_length").get<std::uint64_t>()};
    }
    m.vocabulary = j.at("vocabulary").get<std::string>();
    m.files = j.at("files").get<std::map<std::string, std::string>>();
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed manifest: ") + e.what());
  }
  return m;
}

Manifest read_manifest(const fs::path& dir) {
  const fs::path path = dir / std::string(kManifestFile);
  if (!fs::exists(path)) throw IoError("no manifest at " + path.string());
  const auto bytes = read_file(path);
  try {
    return Manifest::from_json(json::parse(bytes.begin(), bytes.end()));
  } catch (const json::parse_error& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

Manifest write_dataset_dir(std::span<const Instance> instances, const fs::path& dir, const WriteOptions& options) {
  Manifest manifest;
  manifest.dataset = options.spec.name;
  manifest.config = dataset_to_json(options.spec);
  manifest.master_seed = options.master_seed;
  manifest.format = options.format;
  manifest.image_size = options.spec.image_size;

  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

  if (fs::exists(dir / std::string(kManifestFile))) {
    const Manifest existing = read_manifest(dir);
    const bool same = existing.config == manifest.config && existing.master_seed == manifest.master_seed &&
                      existing.format == manifest.format && existing.image_size == manifest.image_size;
    if (same) {
      manifest.splits = existing.splits;
      manifest.files = existing.files;
    } else if (!options.force) {
      throw IoError(dir.string() + " holds a different dataset (config, seed or format differ); use force to replace it");
    } else {
      for (const auto& [name, digest] : existing.files) fs::remove(dir / name, ec);
    }
  }

  std::map<std::string, std::vector<const Instance*>> by_split;
  for (const Instance& inst : instances) by_split[std::string(split_name(inst.split))].push_back(&inst);

  // Splits being rewritten drop their previous files first.
  for (const auto& [split, items] : by_split) {
    for (auto it = manifest.files.begin(); it != manifest.files.end();) {
      if (belongs_to_split(it->first, split)) {
        fs::remove(dir / it->first, ec);
        it = manifest.files.erase(it);
      } else {
        ++it;
      }
    }
  }

  Writer writer(dir, manifest);
  for (const auto& [split, items] : by_split) {
    write_split(split, items, options.format, options.spec.image_size, writer, manifest);
  }
  if (manifest.instance_count() > 0) {
    manifest.vocabulary = std::string(kVocabularyFile);
    writer.put(manifest.vocabulary, as_bytes(vocabulary_text()));
  }
  write_manifest(dir, manifest);
  return manifest;
}

ValidationReport validate_dataset(const fs::path& dir) {
  const fs::path path = dir / std::string(kManifestFile);
  if (!fs::exists(path)) throw IoError("no manifest at " + path.string());
  const auto bytes = read_file(path);
  ValidationReport report;
  const std::string name(kManifestFile);
  json j;
  try {
    j = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    report.violations.push_back({"manifest-corrupt", name, std::nullopt, e.what()});
    return report;
  }
  if (!j.is_object() || !j.contains(kSelfDigestKey) || j.at(kSelfDigestKey) != self_digest(j)) {
    report.violations.push_back({"digest-mismatch", name, std::nullopt, "manifest content differs from its digest"});
    return report;
  }
  Manifest manifest;
  try {
    manifest = Manifest::from_json(j);
  } catch (const IoError& e) {
    report.violations.push_back({"manifest-corrupt", name, std::nullopt, e.what()});
    return report;
  }
  return Checker(dir, std::move(manifest)).run();
}

}  // namespace microworld
