#include <gtest/gtest.h>

#include "pddlkit/construct_io.hpp"
#include "test_support.hpp"

namespace pddlkit {
namespace {

namespace fs = std::filesystem;

TEST(ReadConstruct, GoalOfGarysProblem) {
  auto set = read_construct(":goal", testing::fixture("garys-huge-problem.pddl"));
  ASSERT_EQ(set.blocks.size(), 1u);
  EXPECT_EQ(set.text_of(0), "(:goal (exploited magicfailureapp))");
  EXPECT_EQ(serialize(set.blocks[0]), "(:goal (exploited magicfailureapp))");
}

TEST(ReadConstruct, NoInit) {
  auto set = read_construct_text(":init", "(define (problem p) (:domain d))");
  EXPECT_TRUE(set.blocks.empty());
}

TEST(ReadConstruct, SplisusAction) {
  auto set = read_construct(":action", testing::corpus("splisus.pddl"));
  ASSERT_EQ(set.blocks.size(), 1u);
  EXPECT_EQ(set.blocks[0].elements().at(1)->text, "kill");
}

TEST(ReadConstruct, UnreadableFile) {
  EXPECT_THROW(read_construct(":init", "/nonexistent/file.pddl"),
               fs::filesystem_error);
}

TEST(AddConstruct, HungryGisela) {
  const std::string original = testing::fixture_text("garys-huge-problem.pddl");
  const auto updated =
      add_construct_text(original, ":init", parse_constructs("(hungry gisela)"));

  const std::string before_init =
      "  (:init (hungry gary)\n"
      "         (in pizza-box big-pepperoni)\n"
      "         (has-access gisela magicfailureapp))\n";
  const std::string after_init =
      "  (:init (hungry gary)\n"
      "         (in pizza-box big-pepperoni)\n"
      "         (has-access gisela magicfailureapp)\n"
      "         (hungry gisela))\n";
  ASSERT_NE(original.find(before_init), std::string::npos);
  std::string expected = original;
  expected.replace(expected.find(before_init), before_init.size(), after_init);
  EXPECT_EQ(updated, expected);

  auto init = read_construct_text(":init", updated);
  ASSERT_EQ(init.blocks.size(), 1u);
  auto facts = init.blocks[0].elements();
  EXPECT_EQ(serialize(*facts.back()), "(hungry gisela)");
  EXPECT_EQ(serialize(*facts[1]), "(hungry gary)");
}

TEST(AddConstruct, BytesOutsideBlockUnchanged) {
  const std::string original = testing::fixture_text("garys-huge-problem.pddl");
  const auto block = read_construct_text(":init", original).blocks.at(0).span;
  const auto updated =
      add_construct_text(original, ":init", parse_constructs("(hungry gisela)"));
  const std::size_t grown = updated.size() - original.size();
  EXPECT_EQ(updated.substr(0, block.start), original.substr(0, block.start));
  EXPECT_EQ(updated.substr(block.end + grown), original.substr(block.end));
}

TEST(AddConstruct, EmptySequenceIsIdentity) {
  const std::string original = testing::fixture_text("garys-huge-problem.pddl");
  EXPECT_EQ(add_construct_text(original, ":init", {}), original);
}

TEST(AddConstruct, TwoFactsInOrder) {
  const std::string original = testing::fixture_text("garys-huge-problem.pddl");
  const auto updated = add_construct_text(
      original, ":init", parse_constructs("(hungry gisela) (at gary home)"));
  const auto init = read_construct_text(":init", updated);
  auto facts = init.blocks.at(0).elements();
  ASSERT_GE(facts.size(), 3u);
  EXPECT_EQ(serialize(*facts[facts.size() - 2]), "(hungry gisela)");
  EXPECT_EQ(serialize(*facts.back()), "(at gary home)");
  EXPECT_FALSE(has_errors(parse_sexpr(updated).diagnostics));
}

TEST(AddConstruct, FirstMatchingBlockOnly) {
  const std::string text = "((:init a) (:init b))";
  EXPECT_EQ(add_construct_text(text, ":init", parse_constructs("c")),
            "((:init a\n        c) (:init b))");
}

TEST(AddConstruct, TrailingCommentStaysOnItsLine) {
  const std::string text = "(:init (a) ; last\n)";
  EXPECT_EQ(add_construct_text(text, ":init", parse_constructs("(b)")),
            "(:init (a) ; last\n       (b)\n)");
}

TEST(AddConstruct, EmptyBlock) {
  EXPECT_EQ(add_construct_text("(:init)", ":init", parse_constructs("(a)")),
            "(:init\n (a))");
}

TEST(AddConstruct, Errors) {
  EXPECT_THROW(add_construct_text("(:goal x)", ":init", parse_constructs("(a)")),
               ConstructError);
  EXPECT_THROW(add_construct_text("", ":init", parse_constructs("(a)")),
               ConstructError);
  EXPECT_THROW(add_construct_text("(:init (a)", ":init", parse_constructs("(b)")),
               ConstructError);
  EXPECT_THROW(parse_constructs("(a"), ConstructError);
}

TEST(AddConstruct, FileInPlaceAndDryRun) {
  testing::TempDir tmp;
  const auto file = tmp / "p.pddl";
  fs::copy_file(testing::fixture("garys-huge-problem.pddl"), file);
  const std::string original = read_file(file);
  const auto fact = parse_constructs("(hungry gisela)");

  const auto dry = add_construct(file, ":init", fact, WriteMode::DryRun);
  EXPECT_EQ(read_file(file), original);

  const auto wet = add_construct(file, ":init", fact);
  EXPECT_EQ(dry, wet);
  EXPECT_EQ(read_file(file), wet);
  // No temporary files left behind.
  std::size_t entries = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(tmp.path())) ++entries;
  EXPECT_EQ(entries, 1u);
}

TEST(AddConstruct, RoundTripContainsConstruct) {
  const std::string original = testing::fixture_text("gary-pizza.pddl");
  for (std::string_view c : {"(hungry pizza)", "(location x 1 2)", "(= (f) 3)"}) {
    const auto updated = add_construct_text(original, ":init", parse_constructs(c));
    bool found = false;
    const auto init = read_construct_text(":init", updated);
    for (const auto* fact : init.blocks.at(0).elements()) {
      found |= serialize(*fact) == c;
    }
    EXPECT_TRUE(found) << c;
  }
}

}  // namespace
}  // namespace pddlkit
