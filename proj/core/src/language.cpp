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

#include "microworld/language.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <unordered_map>

#include "microworld/errors.hpp"

namespace microworld {
namespace {

constexpr std::array<std::string_view, 19> kFunctionWords = {
    "there", "is", "are", "a", "an", "the", "no", "most", "all", "two",
    "some", "which", "and", "to", "of", "left", "right", "above", "below",
};

constexpr std::array<std::string_view, 8> kShapePlurals = {
    "squares", "rectangles", "triangles", "pentagons", "crosses", "circles", "semicircles", "ellipses",
};

constexpr std::string_view kHypernym = "shape";
constexpr std::string_view kHypernymPlural = "shapes";

std::vector<std::string> build_vocabulary() {
  std::vector<std::string> v;
  v.emplace_back(kPaddingToken);
  for (auto w : kFunctionWords) v.emplace_back(w);
  v.emplace_back(".");
  v.emplace_back(kHypernym);
  v.emplace_back(kHypernymPlural);
  for (ShapeKind s : kAllShapes) {
    v.emplace_back(shape_name(s));
    v.emplace_back(kShapePlurals[static_cast<std::size_t>(s)]);
  }
  for (Color c : kAllColors) v.emplace_back(color_name(c));
  return v;
}

const std::unordered_map<std::string_view, std::uint32_t>& id_index() {
  static const auto* index = [] {
    auto* m = new std::unordered_map<std::string_view, std::uint32_t>();
    const auto& vocab = vocabulary();
    for (std::uint32_t i = 0; i < vocab.size(); ++i) m->emplace(vocab[i], i);
    return m;
  }();
  return *index;
}

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

std::string noun_singular(const EntityPredicate& p) {
  return p.shape ? std::string(shape_name(*p.shape)) : std::string(kHypernym);
}

std::string noun_plural(const EntityPredicate& p) {
  return p.shape ? std::string(kShapePlurals[static_cast<std::size_t>(*p.shape)]) : std::string(kHypernymPlural);
}

std::string with_color(const EntityPredicate& p, const std::string& noun) {
  return p.color ? std::string(color_name(*p.color)) + " " + noun : noun;
}

std::string np_singular(const EntityPredicate& p) { return with_color(p, noun_singular(p)); }
std::string np_plural(const EntityPredicate& p) { return with_color(p, noun_plural(p)); }

std::string indefinite(const std::string& np) { return (is_vowel(np.front()) ? "an " : "a ") + np; }

bool color_only(const EntityPredicate& p) { return !p.shape && p.color; }

std::string body_singular(const EntityPredicate& p) {
  return color_only(p) ? std::string(color_name(*p.color)) : indefinite(np_singular(p));
}

std::string body_plural(const EntityPredicate& p) {
  return color_only(p) ? std::string(color_name(*p.color)) : np_plural(p);
}

std::string relation_phrase(Relation r) {
  switch (r) {
    case Relation::kLeftOf: return "to the left of";
    case Relation::kRightOf: return "to the right of";
    case Relation::kAbove: return "above";
    case Relation::kBelow: return "below";
  }
  return {};
}

// Lowercase clause without the period.
std::string clause(const Caption& caption, bool in_conjunction) {
  if (caption.is<Existential>()) {
    const EntityPredicate& p = caption.as<Existential>().predicate;
    if (in_conjunction && p.fully_specified()) {
      return "there are some " + noun_plural(p) + " which are " + std::string(color_name(*p.color));
    }
    return "there is " + indefinite(np_singular(p));
  }
  if (caption.is<Relational>()) {
    const Relational& r = caption.as<Relational>();
    return indefinite(np_singular(r.subject)) + " is " + relation_phrase(r.relation) + " " +
           indefinite(np_singular(r.object));
  }
  if (caption.is<Quantified>()) {
    const Quantified& q = caption.as<Quantified>();
    switch (q.quantifier) {
      case Quantifier::kA:
        return "there is " + indefinite(np_singular(q.restrictor)) + " which is " + body_singular(q.body);
      case Quantifier::kNo:
      case Quantifier::kThe:
        return std::string(quantifier_name(q.quantifier)) + " " + np_singular(q.restrictor) + " is " +
               body_singular(q.body);
      case Quantifier::kTwo:
      case Quantifier::kMost:
      case Quantifier::kAll:
        return std::string(quantifier_name(q.quantifier)) + " " + np_plural(q.restrictor) + " are " +
               body_plural(q.body);
    }
  }
  throw std::invalid_argument("nested conjunction cannot be realized");
}

class Parser {
 public:
  explicit Parser(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {}

  Caption sentence() {
    bool plural_existential = false;
    Caption first = clause(plural_existential);
    if (peek() == "and") {
      ++pos_;
      bool unused = false;
      Caption second = clause(unused);
      expect(".");
      expect_end();
      return conjoin(std::move(first), std::move(second));
    }
    if (plural_existential) fail("'there are some' only occurs inside a conjunction");
    expect(".");
    expect_end();
    return first;
  }

 private:
  Caption clause(bool& plural_existential) {
    const std::string_view word = peek();
    if (word == "there") {
      ++pos_;
      if (peek() == "are") {
        ++pos_;
        expect("some");
        EntityPredicate p;
        p.shape = shape_plural();
        expect("which");
        expect("are");
        p.color = color_word();
        plural_existential = true;
        return Existential{p};
      }
      expect("is");
      EntityPredicate p = indefinite_np();
      if (peek() == "which") {
        ++pos_;
        expect("is");
        return Quantified{Quantifier::kA, p, body_singular()};
      }
      return Existential{p};
    }
    if (word == "a" || word == "an") {
      Relational r;
      r.subject = indefinite_np();
      expect("is");
      r.relation = relation();
      r.object = indefinite_np();
      return r;
    }
    if (word == "no" || word == "the") {
      ++pos_;
      Quantified q;
      q.quantifier = word == "no" ? Quantifier::kNo : Quantifier::kThe;
      q.restrictor = np(false);
      expect("is");
      q.body = body_singular();
      return q;
    }
    if (word == "two" || word == "most" || word == "all") {
      ++pos_;
      Quantified q;
      q.quantifier = *quantifier_from_name(word);
      q.restrictor = np(true);
      expect("are");
      q.body = body_plural();
      return q;
    }
    fail("expected the start of a clause");
  }

  Relation relation() {
    const std::string_view word = peek();
    if (word == "above" || word == "below") {
      ++pos_;
      return word == "above" ? Relation::kAbove : Relation::kBelow;
    }
    expect("to");
    expect("the");
    Relation r;
    if (peek() == "left") {
      r = Relation::kLeftOf;
    } else if (peek() == "right") {
      r = Relation::kRightOf;
    } else {
      fail("expected 'left' or 'right'");
    }
    ++pos_;
    expect("of");
    return r;
  }

  EntityPredicate indefinite_np() {
    const std::string_view article = peek();
    if (article != "a" && article != "an") fail("expected 'a' or 'an'");
    ++pos_;
    const std::string_view next = peek();
    if (next.empty() || (article == "an") != is_vowel(next.front())) fail("wrong indefinite article");
    return np(false);
  }

  // [color] noun
  EntityPredicate np(bool plural) {
    EntityPredicate p;
    if (color_from_name(peek())) p.color = color_word();
    p.shape = plural ? shape_plural() : shape_singular();
    return p;
  }

  EntityPredicate body_singular() {
    if (peek() == "a" || peek() == "an") return indefinite_np();
    return EntityPredicate{std::nullopt, color_word()};
  }

  EntityPredicate body_plural() {
    if (color_from_name(peek()) && !is_noun(peek(1))) return EntityPredicate{std::nullopt, color_word()};
    return np(true);
  }

  bool is_noun(std::string_view w) const {
    if (w == kHypernym || w == kHypernymPlural) return true;
    if (shape_from_name(w)) return true;
    return std::find(kShapePlurals.begin(), kShapePlurals.end(), w) != kShapePlurals.end();
  }

  std::optional<ShapeKind> shape_singular() {
    const std::string_view w = peek();
    if (w == kHypernym) {
      ++pos_;
      return std::nullopt;
    }
    if (auto s = shape_from_name(w)) {
      ++pos_;
      return s;
    }
    fail("expected a singular shape noun");
  }

  std::optional<ShapeKind> shape_plural() {
    const std::string_view w = peek();
    if (w == kHypernymPlural) {
      ++pos_;
      return std::nullopt;
    }
    for (ShapeKind s : kAllShapes) {
      if (kShapePlurals[static_cast<std::size_t>(s)] == w) {
        ++pos_;
        return s;
      }
    }
    fail("expected a plural shape noun");
  }

  Color color_word() {
    if (auto c = color_from_name(peek())) {
      ++pos_;
      return *c;
    }
    fail("expected a color");
  }

  std::string_view peek(std::size_t ahead = 0) const {
    return pos_ + ahead < tokens_.size() ? std::string_view(tokens_[pos_ + ahead]) : std::string_view();
  }

  void expect(std::string_view word) {
    if (peek() != word) fail("expected '" + std::string(word) + "'");
    ++pos_;
  }

  void expect_end() {
    if (pos_ != tokens_.size()) fail("trailing input");
  }

  [[noreturn]] void fail(const std::string& message) const {
    const std::string found = pos_ < tokens_.size() ? "'" + tokens_[pos_] + "'" : "end of input";
    throw ParseError(pos_, message + ", found " + found);
  }

  std::vector<std::string> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

const std::vector<std::string>& vocabulary() {
  static const std::vector<std::string> vocab = build_vocabulary();
  return vocab;
}

std::optional<std::uint32_t> token_id(std::string_view token) {
  const auto& index = id_index();
  const auto it = index.find(token);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

bool in_lexicon(std::string_view token) { return token != kPaddingToken && token_id(token).has_value(); }

std::string realize(const Caption& caption) {
  if (!is_valid(caption)) throw std::invalid_argument("invalid caption");
  std::string text;
  if (caption.is<Conjunction>()) {
    const Conjunction& c = caption.as<Conjunction>();
    text = clause(*c.left, true) + " and " + clause(*c.right, true);
  } else {
    text = clause(caption, false);
  }
  text.front() = static_cast<char>(std::toupper(static_cast<unsigned char>(text.front())));
  return text + ".";
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (current.empty()) return;
    if (!in_lexicon(current)) throw UnknownWordError(current);
    tokens.push_back(std::move(current));
    current.clear();
  };
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isspace(c)) {
      flush();
    } else if (ch == '.') {
      flush();
      tokens.emplace_back(".");
    } else {
      current.push_back(static_cast<char>(std::tolower(c)));
    }
  }
  flush();
  return tokens;
}

Caption parse(std::string_view text) {
  std::vector<std::string> tokens = tokenize(text);
  Parser parser(tokens);
  Caption caption = parser.sentence();
  // The grammar accepts a few spellings realize() never produces (for
  // instance "a red shape" as a predicate body); reject those here so that
  // parse stays the exact inverse of realize.
  const std::vector<std::string> canonical = tokenize(realize(caption));
  const auto mismatch = std::mismatch(tokens.begin(), tokens.end(), canonical.begin(), canonical.end());
  if (mismatch.first != tokens.end() || mismatch.second != canonical.end()) {
    const auto at = static_cast<std::size_t>(mismatch.first - tokens.begin());
    throw ParseError(at, "not in canonical form; expected \"" + realize(caption) + "\"");
  }
  return caption;
}

}  // namespace microworld
