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

#include <gtest/gtest.h>

#include <set>

#include "microworld/errors.hpp"
#include "small_worlds.hpp"

namespace microworld {
namespace {

constexpr std::nullopt_t kAny = std::nullopt;

TEST(Vocabulary, PaddingFirstAndClosed) {
  const auto& v = vocabulary();
  EXPECT_EQ(v.front(), kPaddingToken);
  EXPECT_EQ(v.size(), 46u);
  EXPECT_LE(v.size(), 64u);
  EXPECT_EQ(std::set<std::string>(v.begin(), v.end()).size(), v.size());
  for (std::uint32_t i = 0; i < v.size(); ++i) EXPECT_EQ(token_id(v[i]), i);
  EXPECT_FALSE(token_id("dodecahedron").has_value());
  EXPECT_TRUE(in_lexicon("crosses"));
  EXPECT_TRUE(in_lexicon("."));
}

TEST(Realize, ExistentialFromTheFigures) {
  EXPECT_EQ(realize(Existential{{ShapeKind::kRectangle, Color::kBlue}}), "There is a blue rectangle.");
  EXPECT_EQ(realize(Existential{{ShapeKind::kCircle, Color::kGreen}}), "There is a green circle.");
  EXPECT_EQ(realize(Existential{{kAny, Color::kRed}}), "There is a red shape.");
  EXPECT_EQ(realize(Existential{{ShapeKind::kEllipse, kAny}}), "There is an ellipse.");
}

TEST(Realize, Relational) {
  EXPECT_EQ(realize(Relational{{ShapeKind::kCircle, Color::kRed}, Relation::kLeftOf,
                               {ShapeKind::kSemicircle, Color::kCyan}}),
            "A red circle is to the left of a cyan semicircle.");
  EXPECT_EQ(realize(Relational{{}, Relation::kBelow, {ShapeKind::kCross, kAny}}), "A shape is below a cross.");
  const std::string s = realize(Relational{{ShapeKind::kEllipse, kAny}, Relation::kLeftOf,
                                           {ShapeKind::kPentagon, Color::kRed}});
  EXPECT_EQ(s, "An ellipse is to the left of a red pentagon.");
  EXPECT_EQ(realize(Relational{{kAny, Color::kGreen}, Relation::kAbove, {ShapeKind::kSquare, kAny}}),
            "A green shape is above a square.");
  EXPECT_EQ(realize(Relational{{}, Relation::kRightOf, {}}), "A shape is to the right of a shape.");
}

TEST(Realize, Quantified) {
  EXPECT_EQ(realize(Quantified{Quantifier::kMost, {}, {ShapeKind::kRectangle, kAny}}), "Most shapes are rectangles.");
  EXPECT_EQ(realize(Quantified{Quantifier::kAll, {ShapeKind::kTriangle, kAny}, {kAny, Color::kGreen}}),
            "All triangles are green.");
  EXPECT_EQ(realize(Quantified{Quantifier::kNo, {}, {ShapeKind::kTriangle, Color::kRed}}),
            "No shape is a red triangle.");
  EXPECT_EQ(realize(Quantified{Quantifier::kThe, {}, {kAny, Color::kGreen}}), "The shape is green.");
  EXPECT_EQ(realize(Quantified{Quantifier::kTwo, {kAny, Color::kBlue}, {ShapeKind::kPentagon, kAny}}),
            "Two blue shapes are pentagons.");
  EXPECT_EQ(realize(Quantified{Quantifier::kA, {ShapeKind::kCircle, kAny}, {kAny, Color::kYellow}}),
            "There is a circle which is yellow.");
  EXPECT_EQ(realize(Quantified{Quantifier::kA, {}, {ShapeKind::kEllipse, Color::kWhite}}),
            "There is a shape which is a white ellipse.");
}

TEST(Realize, ConjunctionUsesRelativeClauseForFullExistentials) {
  const Caption c = conjoin(Quantified{Quantifier::kMost, {ShapeKind::kSquare, kAny}, {kAny, Color::kGreen}},
                            Existential{{ShapeKind::kCircle, Color::kBlue}});
  EXPECT_EQ(realize(c), "Most squares are green and there are some circles which are blue.");
  const Caption d = conjoin(Existential{{ShapeKind::kSquare, Color::kRed}}, Existential{{ShapeKind::kCross, kAny}});
  EXPECT_EQ(realize(d), "There are some squares which are red and there is a cross.");
}

TEST(Realize, RejectsNestedConjunction) {
  const Caption a = Existential{{}};
  Conjunction nested{std::make_shared<Caption>(conjoin(a, a)), std::make_shared<Caption>(a)};
  EXPECT_THROW(realize(Caption(nested)), std::invalid_argument);
}

TEST(Tokenize, SpecExamples) {
  EXPECT_EQ(tokenize("There is a triangle."), (std::vector<std::string>{"there", "is", "a", "triangle", "."}));
  EXPECT_EQ(tokenize("Most squares are green."), (std::vector<std::string>{"most", "squares", "are", "green", "."}));
  EXPECT_EQ(tokenize("  there   is a   triangle . "),
            (std::vector<std::string>{"there", "is", "a", "triangle", "."}));
}

TEST(Tokenize, UnknownWordNamesTheForm) {
  try {
    tokenize("There is a dodecahedron.");
    FAIL();
  } catch (const UnknownWordError& e) {
    EXPECT_EQ(e.word(), "dodecahedron");
  }
}

TEST(Parse, SpecExamples) {
  EXPECT_EQ(parse("There is a green circle."), Caption(Existential{{ShapeKind::kCircle, Color::kGreen}}));
  EXPECT_EQ(parse("All triangles are green."),
            Caption(Quantified{Quantifier::kAll, {ShapeKind::kTriangle, kAny}, {kAny, Color::kGreen}}));
  EXPECT_EQ(parse("A shape is below a cross."),
            Caption(Relational{{}, Relation::kBelow, {ShapeKind::kCross, kAny}}));
}

TEST(Parse, ErrorsCarryPositions) {
  try {
    parse("There is a green.");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
  EXPECT_THROW(parse("There is an circle."), ParseError);
  EXPECT_THROW(parse("There is a circle"), ParseError);
  EXPECT_THROW(parse("There is a circle. and"), ParseError);
  EXPECT_THROW(parse("There are some circles which are blue."), ParseError);
  EXPECT_THROW(parse("Most squares is green."), ParseError);
  EXPECT_THROW(parse("A circle is to the left a square."), ParseError);
  EXPECT_THROW(parse(""), ParseError);
  EXPECT_THROW(parse("There is a triangle and there is a square and there is a cross."), ParseError);
  EXPECT_THROW(parse("There is a dodecahedron."), UnknownWordError);
}

TEST(Parse, CaseAndSpacingAreCanonicalized) {
  EXPECT_EQ(parse("THERE IS A GREEN CIRCLE ."), parse("There is a green circle."));
}

TEST(RoundTrip, EveryGridCaption) {
  for (const Caption& c : grid::captions(2000)) {
    const std::string text = realize(c);
    ASSERT_EQ(parse(text), c) << text;
    ASSERT_EQ(realize(parse(text)), text);
  }
}

TEST(RoundTrip, FullLexiconPredicates) {
  std::vector<EntityPredicate> preds = {{}};
  for (ShapeKind s : kAllShapes) {
    preds.push_back({s, kAny});
    for (Color c : kAllColors) preds.push_back({s, c});
  }
  for (Color c : kAllColors) preds.push_back({kAny, c});
  for (const auto& p : preds) {
    for (const auto& q : preds) {
      for (Quantifier k : kAllQuantifiers) ASSERT_EQ(parse(realize(Quantified{k, p, q})), Caption(Quantified{k, p, q}));
      const Caption r = Relational{p, Relation::kAbove, q};
      ASSERT_EQ(parse(realize(r)), r);
      const Caption both = conjoin(Existential{p}, Existential{q});
      ASSERT_EQ(parse(realize(both)), both) << realize(both);
    }
  }
}

TEST(Agreement, CopulaMatchesNumber) {
  for (const Caption& c : grid::captions(0)) {
    if (!c.is<Quantified>()) continue;
    const auto tokens = tokenize(realize(c));
    const bool plural = c.as<Quantified>().quantifier == Quantifier::kTwo ||
                        c.as<Quantified>().quantifier == Quantifier::kMost ||
                        c.as<Quantified>().quantifier == Quantifier::kAll;
    EXPECT_EQ(std::count(tokens.begin(), tokens.end(), "are"), plural ? 1 : 0);
    EXPECT_EQ(std::count(tokens.begin(), tokens.end(), "is") > 0, !plural);
  }
}

}  // namespace
}  // namespace microworld
