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
#include <stdexcept>
#include <string>

namespace microworld {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A world or instance could not be produced within the configured attempt
// budget. Usually a sign of an over-constrained WorldSpec.
class GenerationError : public Error {
 public:
  using Error::Error;
};

// No agreeing caption could be found for a world; the caller resamples.
class UnsatisfiableCaption : public Error {
 public:
  using Error::Error;
};

// make_false_world could not find a disagreeing world.
class ExhaustionError : public Error {
 public:
  using Error::Error;
};

// corrupt_caption could not find a false variant.
class NoFalseVariant : public Error {
 public:
  using Error::Error;
};

class InapplicableStrategy : public Error {
 public:
  using Error::Error;
};

class UnknownWordError : public Error {
 public:
  explicit UnknownWordError(std::string word)
      : Error("unknown word '" + word + "'"), word_(std::move(word)) {}
  const std::string& word() const { return word_; }

 private:
  std::string word_;
};

// Out-of-language input. position is the 0-based token index.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& message)
      : Error("parse error at token " + std::to_string(position) + ": " + message),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class UnknownDataset : public Error {
 public:
  using Error::Error;
};

class UnknownTag : public Error {
 public:
  using Error::Error;
};

// Partition restriction whose tag never (or almost never) occurs.
class StarvationError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace microworld
