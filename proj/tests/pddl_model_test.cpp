#include <gtest/gtest.h>

#include "pddlkit/pddl_model.hpp"
#include "test_support.hpp"

namespace pddlkit {
namespace {

bool has_code(const Diagnostics& diags, std::string_view code) {
  for (const auto& d : diags) {
    if (d.code == code) return true;
  }
  return false;
}

std::vector<std::pair<std::string, std::string>> pairs(const TypedList& l) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& e : l.entries) out.emplace_back(e.name, e.type);
  return out;
}

using Pairs = std::vector<std::pair<std::string, std::string>>;

TEST(TypedList, GroupSharesType) {
  EXPECT_EQ(pairs(parse_typed_list("truck airplane motorboat - vehicle")),
            (Pairs{{"truck", "vehicle"},
                   {"airplane", "vehicle"},
                   {"motorboat", "vehicle"}}));
}

TEST(TypedList, DefaultsToObject) {
  EXPECT_EQ(pairs(parse_typed_list("x")), (Pairs{{"x", "object"}}));
}

TEST(TypedList, SeveralGroups) {
  EXPECT_EQ(pairs(parse_typed_list("sipsi flipsi hupf - splis merle - hupf")),
            (Pairs{{"sipsi", "splis"},
                   {"flipsi", "splis"},
                   {"hupf", "splis"},
                   {"merle", "hupf"}}));
}

TEST(TypedList, TrailingUntypedGroup) {
  EXPECT_EQ(pairs(parse_typed_list("a - t b c")),
            (Pairs{{"a", "t"}, {"b", "object"}, {"c", "object"}}));
}

TEST(TypedList, DanglingDash) {
  auto parsed = parse_sexpr("a b -");
  std::vector<const SExprNode*> nodes;
  for (const auto& n : parsed.forest) {
    if (!n.is_trivia()) nodes.push_back(&n);
  }
  Diagnostics diags;
  auto list = parse_typed_list(nodes, diags);
  EXPECT_EQ(pairs(list), (Pairs{{"a", "object"}, {"b", "object"}}));
  EXPECT_TRUE(has_code(diags, "dangling-dash"));
}

TEST(TypedList, EntriesKeepSpans) {
  const std::string text = "ab - t";
  auto list = parse_typed_list(text);
  ASSERT_EQ(list.entries.size(), 1u);
  EXPECT_EQ(list.entries[0].span.start, 0u);
  EXPECT_EQ(list.entries[0].span.end, 2u);
}

TEST(TypedList, WriteThenReadIsStable) {
  for (std::string_view text :
       {"a b - t c - u", "x", "a - t b", "sipsi flipsi hupf - splis merle - hupf"}) {
    auto first = parse_typed_list(text);
    auto again = parse_typed_list(to_pddl(first));
    EXPECT_EQ(pairs(first), pairs(again)) << text;
    EXPECT_EQ(to_pddl(first), to_pddl(again));
  }
}

TEST(ParseDomain, Store) {
  auto r = parse_domain(testing::corpus_text("store.pddl"));
  EXPECT_FALSE(has_errors(r.diagnostics));
  EXPECT_EQ(r.domain.name, "store");
  EXPECT_EQ(r.domain.predicates.size(), 6u);
  ASSERT_EQ(r.domain.actions.size(), 1u);
  EXPECT_EQ(r.domain.actions[0].name, "sell");
}

TEST(ParseDomain, Splisus) {
  auto r = parse_domain(testing::corpus_text("splisus.pddl"));
  EXPECT_FALSE(has_errors(r.diagnostics));
  EXPECT_EQ(r.domain.predicates.size(), 5u);
  ASSERT_EQ(r.domain.actions.size(), 1u);
  EXPECT_EQ(r.domain.actions[0].name, "kill");
  EXPECT_EQ(r.domain.types.entries.size(), 20u);
}

TEST(ParseDomain, Minimal) {
  auto r = parse_domain("(define (domain d))");
  EXPECT_TRUE(r.diagnostics.empty());
  EXPECT_EQ(r.domain.name, "d");
  EXPECT_TRUE(r.domain.predicates.empty());
  EXPECT_TRUE(r.domain.actions.empty());
}

TEST(ParseDomain, MissingDefine) {
  auto r = parse_domain("(:types a b)");
  EXPECT_TRUE(has_code(r.diagnostics, "missing-define"));
  EXPECT_TRUE(r.domain.name.empty());
}

TEST(ParseDomain, UnknownBlockWarns) {
  auto r = parse_domain("(define (domain d) (:typing a))");
  EXPECT_FALSE(has_errors(r.diagnostics));
  EXPECT_TRUE(has_code(r.diagnostics, "unknown-block"));
}

TEST(ParseDomain, DuplicateTypesMerged) {
  auto r = parse_domain("(define (domain d) (:types a) (:types b - a))");
  EXPECT_TRUE(has_code(r.diagnostics, "duplicate-block"));
  EXPECT_EQ(r.domain.types.entries.size(), 2u);
}

TEST(ParseDomain, EitherWarns) {
  auto r = parse_domain(
      "(define (domain d) (:types a b c - (either a b)))");
  EXPECT_TRUE(has_code(r.diagnostics, "either-type"));
}

TEST(ParseDomain, SignatureTextIsVerbatim) {
  auto r = parse_domain(testing::corpus_text("store.pddl"));
  bool found = false;
  for (const auto& p : r.domain.predicates) {
    found |= p.signature_text == "(product-at ?l1 - lola ?l2 - lila)";
  }
  EXPECT_TRUE(found);
}

TEST(ParseDomain, DurativeActionAndFunctions) {
  auto r = parse_domain(R"((define (domain d)
  (:requirements :durative-actions :numeric-fluents)
  (:functions (fuel ?v) - number (speed))
  (:durative-action go
    :parameters (?v)
    :duration (= ?duration 3)
    :condition (at start (ready ?v))
    :effect (at end (done ?v)))))");
  EXPECT_FALSE(has_errors(r.diagnostics));
  ASSERT_EQ(r.domain.functions.size(), 2u);
  EXPECT_EQ(r.domain.functions[0].result_type, "number");
  ASSERT_EQ(r.domain.durative_actions.size(), 1u);
  EXPECT_TRUE(r.domain.durative_actions[0].durative);
  EXPECT_TRUE(r.domain.durative_actions[0].duration.has_value());
}

TEST(ParseProblem, LocationInit) {
  auto r = parse_problem(testing::fixture_text("gary-pizza.pddl"));
  EXPECT_FALSE(has_errors(r.diagnostics));
  std::size_t locations = 0;
  for (const auto& fact : r.problem.init) locations += fact.is_headed_by("location");
  EXPECT_EQ(locations, 2u);
  EXPECT_EQ(r.problem.init.size(), 3u);
}

TEST(ParseProblem, MissingGoalWarns) {
  auto r = parse_problem("(define (problem p) (:domain d))");
  EXPECT_FALSE(has_errors(r.diagnostics));
  EXPECT_TRUE(r.problem.init.empty());
  EXPECT_FALSE(r.problem.goal.has_value());
  EXPECT_TRUE(has_code(r.diagnostics, "missing-goal"));
  EXPECT_EQ(r.problem.domain_ref, "d");
}

TEST(ParseProblem, GoalTree) {
  auto r = parse_problem(testing::fixture_text("garys-huge-problem.pddl"));
  ASSERT_TRUE(r.problem.goal.has_value());
  EXPECT_TRUE(r.problem.goal->is_headed_by("exploited"));
  EXPECT_EQ(serialize(*r.problem.goal), "(exploited magicfailureapp)");
  EXPECT_EQ(r.problem.objects.entries.size(), 5u);
}

TEST(FileKind, Detect) {
  EXPECT_EQ(detect_file_kind("(define (domain d))"), FileKind::Domain);
  EXPECT_EQ(detect_file_kind("; c\n(define (problem p))"), FileKind::Problem);
  EXPECT_EQ(detect_file_kind("(foo)"), FileKind::Unknown);
}

TEST(Lexical, Names) {
  EXPECT_TRUE(is_pddl_name("in-city"));
  EXPECT_TRUE(is_pddl_name("p_1"));
  EXPECT_FALSE(is_pddl_name("_furniture"));
  EXPECT_FALSE(is_pddl_name("?x"));
  EXPECT_TRUE(is_pddl_variable("?x"));
  EXPECT_FALSE(is_pddl_variable("??o"));
  EXPECT_FALSE(is_pddl_variable("\\$k"));
  EXPECT_TRUE(is_pddl_number("2.5"));
  EXPECT_TRUE(is_pddl_number("-3"));
  EXPECT_FALSE(is_pddl_number("1e"));
}

}  // namespace
}  // namespace pddlkit
