#include <gtest/gtest.h>

#include <nlohmann/json.hpp>
#include <random>

#include "pddlkit/highlight.hpp"
#include "test_support.hpp"

namespace pddlkit {
namespace {

void expect_tiles(const std::vector<Token>& tokens, std::string_view text) {
  std::size_t cursor = 0;
  for (const auto& t : tokens) {
    ASSERT_EQ(t.span.start, cursor);
    ASSERT_LT(t.span.start, t.span.end);
    cursor = t.span.end;
  }
  ASSERT_EQ(cursor, text.size());
}

std::size_t count_scope(const std::vector<Token>& tokens, Scope s) {
  std::size_t n = 0;
  for (const auto& t : tokens) n += t.scope == s;
  return n;
}

std::size_t count_substr(std::string_view hay, std::string_view needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string_view::npos;
       pos = hay.find(needle, pos + needle.size())) {
    ++n;
  }
  return n;
}

Scope scope_of(const std::vector<Token>& tokens, std::string_view text,
               std::string_view needle) {
  const auto pos = text.find(needle);
  for (const auto& t : tokens) {
    if (t.span.start <= pos && pos < t.span.end) return t.scope;
  }
  ADD_FAILURE() << "no token at " << needle;
  return Scope::Punctuation;
}

TEST(Tokenize, MinimalDomainFullyScoped) {
  const std::string text = "(define (domain d))";
  auto tokens = tokenize(text);
  expect_tiles(tokens, text);
  EXPECT_EQ(count_scope(tokens, Scope::Unscoped), 0u);
  EXPECT_EQ(tokens.size(), 9u);
  EXPECT_EQ(scope_of(tokens, text, "define"), Scope::Keyword);
  EXPECT_EQ(scope_of(tokens, text, "domain"), Scope::Keyword);
  EXPECT_EQ(scope_of(tokens, text, "d)"), Scope::Name);
}

TEST(Tokenize, DoubleQuestionMarkIsUnscoped) {
  const std::string text = testing::corpus_text("coffee.pddl");
  auto tokens = tokenize(text);
  expect_tiles(tokens, text);
  EXPECT_EQ(scope_of(tokens, text, "??o"), Scope::Unscoped);
}

TEST(Tokenize, TypingAsBlockHeadIsUnscoped) {
  const std::string text = testing::corpus_text("logistics.pddl");
  auto tokens = tokenize(text);
  EXPECT_EQ(scope_of(tokens, text, "(:typing truck"), Scope::Unscoped);
}

TEST(Tokenize, ParametersOnlyInsideAction) {
  const std::string good =
      "(define (domain d) (:action a :parameters (?x) :effect (p ?x)))";
  auto t1 = tokenize(good);
  EXPECT_EQ(scope_of(t1, good, ":parameters"), Scope::Keyword);
  EXPECT_EQ(count_scope(t1, Scope::Unscoped), 0u);

  const std::string bad = "(define (domain d) (:predicates :parameters (p)))";
  auto t2 = tokenize(bad);
  EXPECT_EQ(scope_of(t2, bad, ":parameters"), Scope::Unscoped);
}

TEST(Tokenize, ScopesInValidDomain) {
  const std::string text = R"((define (domain d)
  ; comment
  (:requirements :strips :typing :numeric-fluents)
  (:types truck - vehicle)
  (:functions (fuel ?t - truck))
  (:predicates (at ?t - truck))
  (:action drive
    :parameters (?t - truck)
    :precondition (and (at ?t) (> (fuel ?t) 2.5))
    :effect (decrease (fuel ?t) 1)))
)";
  auto tokens = tokenize(text);
  expect_tiles(tokens, text);
  EXPECT_EQ(count_scope(tokens, Scope::Unscoped), 0u);
  EXPECT_EQ(scope_of(tokens, text, "; comment"), Scope::Comment);
  EXPECT_EQ(scope_of(tokens, text, ":strips"), Scope::Requirement);
  EXPECT_EQ(scope_of(tokens, text, "vehicle"), Scope::TypeName);
  EXPECT_EQ(scope_of(tokens, text, "?t - truck))\n  (:action"), Scope::Variable);
  EXPECT_EQ(scope_of(tokens, text, "2.5"), Scope::Number);
  EXPECT_EQ(scope_of(tokens, text, "drive"), Scope::Name);
}

TEST(Tokenize, UnboundVariable) {
  const std::string text =
      "(define (domain d) (:action a :parameters (?x) :effect (p ?y)))";
  auto tokens = tokenize(text);
  EXPECT_EQ(scope_of(tokens, text, "?y"), Scope::Unscoped);
}

TEST(Tokenize, QuantifierBindsVariable) {
  const std::string text =
      "(define (domain d) (:requirements :adl) (:action a :parameters (?x) "
      ":effect (forall (?y) (p ?x ?y))))";
  EXPECT_EQ(count_scope(tokenize(text), Scope::Unscoped), 0u);
}

TEST(Tokenize, ProblemFile) {
  const std::string text = testing::fixture_text("gary-pizza.pddl");
  auto tokens = tokenize(text);
  expect_tiles(tokens, text);
  EXPECT_EQ(count_scope(tokens, Scope::Unscoped), 0u);
  EXPECT_EQ(scope_of(tokens, text, "4 2"), Scope::Number);
}

TEST(InvalidRegions, ValidCorpusHasNone) {
  for (const char* name : {"splisus.pddl", "store.pddl"}) {
    const std::string text = testing::corpus_text(name);
    auto tokens = tokenize(text);
    expect_tiles(tokens, text);
    EXPECT_TRUE(invalid_regions(tokens, text).empty()) << name;
  }
}

TEST(InvalidRegions, OpenParensAreOneRegion) {
  const std::string text = "(((";
  auto regions = invalid_regions(tokenize(text), text);
  ASSERT_EQ(regions.size(), 1u);
  EXPECT_EQ(regions[0].start, 0u);
  EXPECT_EQ(regions[0].end, 3u);
}

TEST(InvalidRegions, MergeAcrossWhitespaceOnly) {
  const std::string text = "(define (domain d) ??a ??b (:types x))";
  auto regions = invalid_regions(tokenize(text), text);
  ASSERT_EQ(regions.size(), 1u);
  EXPECT_EQ(text.substr(regions[0].start, regions[0].size()), "??a ??b");
}

TEST(InvalidRegions, DeletingAClosingParenIsDetected) {
  // Sensitivity: every single ')' removed from a valid domain is noticed.
  for (const char* name : {"splisus.pddl", "store.pddl"}) {
    const std::string text = testing::corpus_text(name);
    std::size_t tried = 0;
    for (std::size_t pos = text.find(')'); pos != std::string::npos;
         pos = text.find(')', pos + 1)) {
      std::string broken = text;
      broken.erase(pos, 1);
      EXPECT_FALSE(invalid_regions(tokenize(broken), broken).empty())
          << name << " without ')' at " << pos;
      ++tried;
    }
    EXPECT_GT(tried, 20u);
  }
}

TEST(TokensJson, Empty) { EXPECT_EQ(emit_tokens_json({}, ""), "[]"); }

TEST(TokensJson, TopLevelAtom) {
  const std::string text = "x";
  auto j = nlohmann::json::parse(emit_tokens_json(tokenize(text), text));
  ASSERT_EQ(j.size(), 1u);
  EXPECT_EQ(j[0]["scope"], "Unscoped");
  EXPECT_EQ(j[0]["text"], "x");
  EXPECT_EQ(j[0]["start"], 0);
  EXPECT_EQ(j[0]["end"], 1);
}

TEST(TokensJson, MinimalDomainGolden) {
  const std::string text = "(define (domain d))";
  const std::string expected = R"json([
  {"start":0,"end":1,"scope":"Punctuation","text":"("},
  {"start":1,"end":7,"scope":"Keyword","text":"define"},
  {"start":7,"end":8,"scope":"Punctuation","text":" "},
  {"start":8,"end":9,"scope":"Punctuation","text":"("},
  {"start":9,"end":15,"scope":"Keyword","text":"domain"},
  {"start":15,"end":16,"scope":"Punctuation","text":" "},
  {"start":16,"end":17,"scope":"Name","text":"d"},
  {"start":17,"end":18,"scope":"Punctuation","text":")"},
  {"start":18,"end":19,"scope":"Punctuation","text":")"}
])json";
  EXPECT_EQ(emit_tokens_json(tokenize(text), text), expected);
}

TEST(TokensJson, NonAsciiIsValidUtf8) {
  const std::string text = testing::corpus_text("coffee.pddl");
  auto j = nlohmann::json::parse(emit_tokens_json(tokenize(text), text));
  std::size_t previous = 0;
  for (const auto& rec : j) {
    EXPECT_GE(rec["start"].get<std::size_t>(), previous);
    previous = rec["start"];
  }
}

TEST(RenderHtml, EmptyDocument) {
  const std::string html = render_html({}, "");
  EXPECT_NE(html.find("<!DOCTYPE html>"), std::string::npos);
  EXPECT_NE(html.find("<pre class=\"pddl\"></pre>"), std::string::npos);
}

TEST(RenderHtml, UnscopedSpansMatchRegions) {
  for (const char* name : {"coffee.pddl", "logistics.pddl", "splisus.pddl"}) {
    const std::string text = testing::corpus_text(name);
    auto tokens = tokenize(text);
    const std::string html = render_html(tokens, text);
    EXPECT_EQ(count_substr(html, "<span class=\"unscoped\">"),
              invalid_regions(tokens, text).size())
        << name;
  }
}

TEST(RenderHtml, Escapes) {
  const std::string text = "(define (domain d)) ; a < b & c";
  const std::string html = render_html(tokenize(text), text, "<t>");
  EXPECT_NE(html.find("a &lt; b &amp; c"), std::string::npos);
  EXPECT_NE(html.find("<title>&lt;t&gt;</title>"), std::string::npos);
}

TEST(ScopeNames, RoundTrip) {
  for (Scope s : {Scope::Keyword, Scope::Variable, Scope::Name, Scope::TypeName,
                  Scope::Number, Scope::Comment, Scope::Requirement,
                  Scope::Punctuation, Scope::Unscoped}) {
    auto back = scope_from_string(to_string(s));
    ASSERT_TRUE(back.has_value());
    EXPECT_EQ(*back, s);
  }
  EXPECT_FALSE(scope_from_string("Bogus").has_value());
}

TEST(TokenizeProperty, TilesRandomMutationsOfCorpus) {
  std::mt19937 rng(7);
  const std::string base = testing::corpus_text("store.pddl");
  static constexpr std::string_view kNoise = "()?;- \n:$_x9";
  for (int i = 0; i < 300; ++i) {
    std::string text = base;
    std::uniform_int_distribution<int> edits(1, 6);
    for (int e = edits(rng); e > 0; --e) {
      std::uniform_int_distribution<std::size_t> pos(0, text.size());
      std::uniform_int_distribution<std::size_t> ch(0, kNoise.size() - 1);
      const std::size_t p = pos(rng);
      if (rng() % 2 == 0 && p < text.size()) {
        text.erase(p, 1);
      } else {
        text.insert(p, 1, kNoise[ch(rng)]);
      }
    }
    auto tokens = tokenize(text);
    expect_tiles(tokens, text);
    EXPECT_EQ(tokens, tokenize(text));
  }
}

}  // namespace
}  // namespace pddlkit
