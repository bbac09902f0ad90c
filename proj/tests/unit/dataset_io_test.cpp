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

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "microworld/errors.hpp"
#include "microworld/language.hpp"
#include "microworld/serialization.hpp"

namespace microworld {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class DatasetDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("mw_io_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  Manifest write(const DatasetSpec& spec, Split split, std::uint64_t count, ExportFormat format,
                 std::uint64_t seed = 7, bool force = false) {
    const auto xs = generate_instances(spec, split, count, seed);
    return write_dataset_dir(xs, dir_, {format, spec, seed, force});
  }

  std::vector<std::string> lines(const std::string& name) {
    std::ifstream in(dir_ / name);
    std::vector<std::string> out;
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
  }

  void put_lines(const std::string& name, const std::vector<std::string>& ls) {
    std::ofstream out(dir_ / name, std::ios::binary | std::ios::trunc);
    for (const auto& l : ls) out << l << "\n";
  }

  void flip_byte(const std::string& name, std::size_t offset, std::uint8_t mask = 0x01) {
    auto bytes = read_file(dir_ / name);
    bytes.at(offset) ^= mask;
    write_file(dir_ / name, bytes);
  }

  fs::path dir_;
};

TEST(Png, RoundTrip) {
  Image img(64, 64);
  for (std::size_t i = 0; i < img.pixels.size(); ++i) img.pixels[i] = static_cast<std::uint8_t>(i * 37);
  const auto bytes = encode_png(img);
  ASSERT_GE(bytes.size(), 8u);
  EXPECT_EQ(bytes[1], 'P');
  EXPECT_EQ(decode_png(bytes), img);
}

TEST(Png, RejectsGarbage) {
  const std::vector<std::uint8_t> junk = {1, 2, 3, 4, 5};
  EXPECT_THROW(decode_png(junk), IoError);
}

TEST(Sha256, KnownDigest) {
  const std::string abc = "abc";
  EXPECT_EQ(sha256_hex({reinterpret_cast<const std::uint8_t*>(abc.data()), abc.size()}),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Formats, Names) {
  for (auto f : {ExportFormat::kJsonlPng, ExportFormat::kTensor, ExportFormat::kBoth}) {
    EXPECT_EQ(format_from_name(format_name(f)), f);
  }
  EXPECT_FALSE(format_from_name("hdf5"));
}

TEST_F(DatasetDir, TenOneShapeInstances) {
  const Manifest m = write(builtin_dataset("oneshape"), Split::kTrain, 10, ExportFormat::kJsonlPng);
  for (int i = 0; i < 10; ++i) EXPECT_TRUE(fs::exists(dir_ / ("train_" + std::to_string(i) + ".png"))) << i;
  const auto ls = lines("train.jsonl");
  ASSERT_EQ(ls.size(), 10u);
  for (std::size_t i = 0; i < ls.size(); ++i) EXPECT_EQ(json::parse(ls[i]).at("index"), i);
  EXPECT_TRUE(fs::exists(dir_ / "manifest.json"));
  EXPECT_TRUE(fs::exists(dir_ / "vocab.txt"));
  EXPECT_EQ(m.instance_count(), 10u);
  EXPECT_EQ(read_manifest(dir_).to_json(), m.to_json());
  // 10 images, the records and the vocabulary.
  EXPECT_EQ(m.files.size(), 12u);
}

TEST_F(DatasetDir, EmptyListWritesOnlyTheManifest) {
  const Manifest m = write_dataset_dir({}, dir_, {ExportFormat::kBoth, builtin_dataset("spatial"), 1, false});
  EXPECT_EQ(m.instance_count(), 0u);
  EXPECT_TRUE(m.files.empty());
  std::vector<fs::path> entries(fs::directory_iterator(dir_), fs::directory_iterator{});
  ASSERT_EQ(entries.size(), 1u);
  EXPECT_EQ(entries[0].filename(), "manifest.json");
  EXPECT_TRUE(validate_dataset(dir_).ok());
}

TEST_F(DatasetDir, TensorArchiveShapes) {
  const DatasetSpec ds = builtin_dataset("spatial");
  const Manifest m = write(ds, Split::kValidation, 25, ExportFormat::kTensor);
  const auto& s = m.splits.at("validation");
  EXPECT_EQ(s.count, 25u);
  EXPECT_EQ(fs::file_size(dir_ / "validation_captions.u32"), 25 * s.caption_length * 4);
  EXPECT_EQ(fs::file_size(dir_ / "validation_images.u8"), 25u * 64 * 64 * 3);
  EXPECT_EQ(fs::file_size(dir_ / "validation_labels.u8"), 25u);
  EXPECT_FALSE(fs::exists(dir_ / "validation.jsonl"));
  EXPECT_TRUE(validate_dataset(dir_).ok());
}

TEST_F(DatasetDir, TensorAndRecordsAgree) {
  const DatasetSpec ds = builtin_dataset("quantification");
  const auto xs = generate_instances(ds, Split::kTrain, 30, 3);
  const Manifest m = write_dataset_dir(xs, dir_, {ExportFormat::kBoth, ds, 3, false});
  const auto len = m.splits.at("train").caption_length;
  const auto caps = read_file(dir_ / "train_captions.u32");
  const auto imgs = read_file(dir_ / "train_images.u8");
  const auto labels = read_file(dir_ / "train_labels.u8");
  const auto ls = lines("train.jsonl");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::vector<std::string> tokens;
    for (std::size_t k = 0; k < len; ++k) {
      const std::size_t o = (i * len + k) * 4;
      const std::uint32_t id = caps[o] | caps[o + 1] << 8 | caps[o + 2] << 16 | static_cast<std::uint32_t>(caps[o + 3]) << 24;
      if (id != 0) tokens.push_back(vocabulary().at(id));
    }
    EXPECT_EQ(tokens, tokenize(xs[i].caption_text));
    EXPECT_EQ(labels[i], xs[i].label ? 1 : 0);
    EXPECT_TRUE(std::equal(xs[i].image.pixels.begin(), xs[i].image.pixels.end(), imgs.begin() + i * 64 * 64 * 3));
    EXPECT_EQ(decode_png(read_file(dir_ / ("train_" + std::to_string(i) + ".png"))), xs[i].image);
    EXPECT_EQ(json::parse(ls[i]).at("caption"), xs[i].caption_text);
  }
  const auto report = validate_dataset(dir_);
  EXPECT_TRUE(report.ok());
  EXPECT_EQ(report.instances_checked, 30u);
}

TEST_F(DatasetDir, FlippedLabelIsOneViolation) {
  write(builtin_dataset("spatial"), Split::kTrain, 12, ExportFormat::kJsonlPng);
  auto ls = lines("train.jsonl");
  json rec = json::parse(ls[5]);
  rec["label"] = !rec["label"].get<bool>();
  ls[5] = rec.dump();
  put_lines("train.jsonl", ls);
  const auto report = validate_dataset(dir_);
  ASSERT_EQ(report.violations.size(), 1u);
  EXPECT_EQ(report.violations[0].kind, "label-mismatch");
  EXPECT_EQ(report.violations[0].index, 5u);
}

TEST_F(DatasetDir, OutOfGrammarCaptionIsParseFailure) {
  write(builtin_dataset("oneshape"), Split::kTest, 8, ExportFormat::kJsonlPng);
  auto ls = lines("test.jsonl");
  json rec = json::parse(ls[3]);
  rec["caption"] = "There is a square red.";
  ls[3] = rec.dump();
  put_lines("test.jsonl", ls);
  const auto report = validate_dataset(dir_);
  ASSERT_EQ(report.violations.size(), 1u);
  EXPECT_EQ(report.violations[0].kind, "parse-failure");
  EXPECT_EQ(report.violations[0].index, 3u);
}

TEST_F(DatasetDir, TensorLabelByteFlip) {
  write(builtin_dataset("multishape"), Split::kTrain, 10, ExportFormat::kBoth);
  flip_byte("train_labels.u8", 4);
  const auto report = validate_dataset(dir_);
  ASSERT_EQ(report.violations.size(), 1u);
  EXPECT_EQ(report.violations[0].kind, "label-mismatch");
  EXPECT_EQ(report.violations[0].file, "train_labels.u8");
  EXPECT_EQ(report.violations[0].index, 4u);
}

TEST_F(DatasetDir, ImageByteFlips) {
  write(builtin_dataset("multishape"), Split::kTrain, 6, ExportFormat::kBoth);
  flip_byte("train_images.u8", 2 * 64 * 64 * 3 + 100);
  auto report = validate_dataset(dir_);
  ASSERT_EQ(report.violations.size(), 1u);
  EXPECT_EQ(report.violations[0].kind, "image-mismatch");
  EXPECT_EQ(report.violations[0].index, 2u);

  const auto png = read_file(dir_ / "train_1.png");
  flip_byte("train_images.u8", 2 * 64 * 64 * 3 + 100);
  flip_byte("train_1.png", png.size() / 2);
  report = validate_dataset(dir_);
  ASSERT_EQ(report.violations.size(), 1u);
  EXPECT_EQ(report.violations[0].file, "train_1.png");
}

TEST_F(DatasetDir, MissingFile) {
  write(builtin_dataset("oneshape"), Split::kTrain, 4, ExportFormat::kJsonlPng);
  fs::remove(dir_ / "train_2.png");
  const auto report = validate_dataset(dir_);
  ASSERT_EQ(report.violations.size(), 1u);
  EXPECT_EQ(report.violations[0].kind, "missing-file");
}

TEST_F(DatasetDir, VocabularyEdit) {
  write(builtin_dataset("oneshape"), Split::kTrain, 2, ExportFormat::kTensor);
  flip_byte("vocab.txt", 1, 0x20);
  const auto report = validate_dataset(dir_);
  ASSERT_EQ(report.violations.size(), 1u);
  EXPECT_EQ(report.violations[0].kind, "vocabulary-mismatch");
}

TEST_F(DatasetDir, UnreadManifestIsAnError) {
  fs::create_directories(dir_);
  EXPECT_THROW(validate_dataset(dir_), IoError);
}

TEST_F(DatasetDir, ExtendsMatchingDirectory) {
  const DatasetSpec ds = builtin_dataset("spatial");
  write(ds, Split::kTrain, 5, ExportFormat::kJsonlPng);
  const Manifest m = write(ds, Split::kTest, 3, ExportFormat::kJsonlPng);
  EXPECT_EQ(m.splits.size(), 2u);
  EXPECT_EQ(m.instance_count(), 8u);
  // Rewriting a split replaces its files.
  const Manifest again = write(ds, Split::kTrain, 2, ExportFormat::kJsonlPng);
  EXPECT_EQ(again.splits.at("train").count, 2u);
  EXPECT_FALSE(fs::exists(dir_ / "train_4.png"));
  EXPECT_TRUE(validate_dataset(dir_).ok());
}

TEST_F(DatasetDir, RefusesDifferentDatasetUnlessForced) {
  write(builtin_dataset("spatial"), Split::kTrain, 3, ExportFormat::kJsonlPng);
  const auto before = read_file(dir_ / "manifest.json");
  EXPECT_THROW(write(builtin_dataset("oneshape"), Split::kTrain, 3, ExportFormat::kJsonlPng), IoError);
  EXPECT_THROW(write(builtin_dataset("spatial"), Split::kTrain, 3, ExportFormat::kJsonlPng, 8), IoError);
  EXPECT_EQ(read_file(dir_ / "manifest.json"), before);
  const Manifest m = write(builtin_dataset("oneshape"), Split::kTest, 2, ExportFormat::kTensor, 7, true);
  EXPECT_EQ(m.dataset, "oneshape");
  EXPECT_FALSE(fs::exists(dir_ / "train.jsonl"));
  EXPECT_TRUE(validate_dataset(dir_).ok());
}

}  // namespace
}  // namespace microworld
