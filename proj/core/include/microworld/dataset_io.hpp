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

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "microworld/instance.hpp"
#include "microworld/raster.hpp"

namespace microworld {

inline constexpr int kManifestFormatVersion = 1;
inline constexpr std::string_view kManifestFile = "manifest.json";
inline constexpr std::string_view kVocabularyFile = "vocab.txt";

std::vector<std::uint8_t> encode_png(const Image& image);
// Throws IoError on a malformed stream.
Image decode_png(std::span<const std::uint8_t> bytes);

std::string sha256_hex(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

enum class ExportFormat { kJsonlPng, kTensor, kBoth };

std::string_view format_name(ExportFormat format);
std::optional<ExportFormat> format_from_name(std::string_view name);

// Tensor archive file names for one split.
std::string images_file(std::string_view split);    // N x S x S x 3 uint8
std::string captions_file(std::string_view split);  // N x L uint32 little-endian, 0-padded
std::string labels_file(std::string_view split);    // N uint8, 1 = agree

struct SplitSummary {
  std::uint64_t count = 0;
  std::uint64_t caption_length = 0;  // L of the tensor archive
  friend bool operator==(const SplitSummary&, const SplitSummary&) = default;
};

struct Manifest {
  int format_version = kManifestFormatVersion;
  std::string dataset;
  nlohmann::json config;  // dataset_to_json snapshot
  std::uint64_t master_seed = 0;
  ExportFormat format = ExportFormat::kJsonlPng;
  int image_size = kDefaultImageSize;
  std::map<std::string, SplitSummary> splits;
  std::string vocabulary;                      // file name, empty when no data
  std::map<std::string, std::string> files;    // file name -> sha256 hex

  std::uint64_t instance_count() const;
  nlohmann::json to_json() const;
  static Manifest from_json(const nlohmann::json& j);
};

Manifest read_manifest(const std::filesystem::path& dir);

struct WriteOptions {
  ExportFormat format = ExportFormat::kJsonlPng;
  DatasetSpec spec;            // snapshot recorded in the manifest
  std::uint64_t master_seed = 0;
  bool force = false;          // replace a directory whose manifest does not match
};

// Writes the instances (possibly from several splits) and manifest.json.
// An existing directory is extended when its manifest has the same config,
// seed and format; otherwise it is refused unless options.force. Throws
// IoError.
Manifest write_dataset_dir(std::span<const Instance> instances, const std::filesystem::path& dir,
                           const WriteOptions& options);

struct Violation {
  std::string kind;  // "digest-mismatch", "label-mismatch", "parse-failure", ...
  std::string file;
  std::optional<std::uint64_t> index;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::uint64_t instances_checked = 0;
  bool ok() const { return violations.empty(); }
};

// Digest check plus semantic re-checks of every record. A file whose digest
// no longer matches is reported through its content violations when any are
// found, and as a single digest-mismatch otherwise. The manifest carries a
// digest of itself; a modified or unparsable manifest is the only violation
// reported. Throws IoError when the manifest is missing.
ValidationReport validate_dataset(const std::filesystem::path& dir);

}  // namespace microworld
