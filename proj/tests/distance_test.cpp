#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>

#include "pddlkit/construct_io.hpp"
#include "pddlkit/distance.hpp"
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

std::string problem_with(const std::string& init_facts) {
  return "(define (problem p) (:domain d)\n  (:init " + init_facts +
         ")\n  (:goal (and)))\n";
}

/// (from, to) -> value string for every distance fact in the init block.
std::vector<std::tuple<std::string, std::string, std::string>> distance_facts(
    const std::string& text) {
  std::vector<std::tuple<std::string, std::string, std::string>> out;
  auto init = read_construct_text(":init", text);
  for (const auto* fact : init.blocks.at(0).elements()) {
    if (!fact->is_headed_by("distance")) continue;
    auto parts = fact->elements();
    out.emplace_back(parts.at(1)->text, parts.at(2)->text, parts.at(3)->text);
  }
  return out;
}

TEST(ExtractLocations, GaryAndPizza) {
  auto r = extract_locations(testing::fixture_text("gary-pizza.pddl"));
  EXPECT_TRUE(r.diagnostics.empty());
  ASSERT_EQ(r.facts.size(), 2u);
  EXPECT_EQ(r.facts[0].object, "gary");
  EXPECT_EQ(r.facts[0].coords, (std::vector<double>{4, 2}));
  EXPECT_EQ(r.facts[1].object, "pizza");
  EXPECT_EQ(r.facts[1].coords, (std::vector<double>{2, 3}));
}

TEST(ExtractLocations, EmptyInit) {
  auto r = extract_locations(problem_with(""));
  EXPECT_TRUE(r.facts.empty());
  EXPECT_FALSE(has_errors(r.diagnostics));
}

TEST(ExtractLocations, OneDimension) {
  auto r = extract_locations(problem_with("(location a 1) (location b 4)"));
  ASSERT_EQ(r.facts.size(), 2u);
  EXPECT_EQ(r.facts[0].coords.size(), 1u);
}

TEST(ExtractLocations, Errors) {
  EXPECT_TRUE(has_code(
      extract_locations(problem_with("(location a 1 2) (location b 4)")).diagnostics,
      "mixed-dimensions"));
  EXPECT_TRUE(has_code(
      extract_locations(problem_with("(location a x 2)")).diagnostics,
      "non-numeric-coordinate"));
  EXPECT_TRUE(has_code(
      extract_locations(problem_with("(location a 1) (location a 2)")).diagnostics,
      "duplicate-location"));
  EXPECT_TRUE(has_code(
      extract_locations("(define (problem p) (:domain d))").diagnostics,
      "missing-init"));
}

TEST(ExtractLocations, CustomPredicate) {
  auto r = extract_locations(problem_with("(pos a 1 1) (location b 3 3)"), "pos");
  ASSERT_EQ(r.facts.size(), 1u);
  EXPECT_EQ(r.facts[0].object, "a");
}

TEST(Euclidean, Examples) {
  const std::vector<double> gary{4, 2}, pizza{2, 3};
  EXPECT_DOUBLE_EQ(euclidean(gary, pizza), std::sqrt(5.0));
  EXPECT_EQ(euclidean(gary, gary), 0.0);
  const std::vector<double> o{0, 0, 0}, p{1, 2, 2};
  EXPECT_EQ(euclidean(o, p), 3.0);
  const std::vector<double> one{1};
  EXPECT_THROW(euclidean(one, gary), std::invalid_argument);
}

TEST(FormatDistance, Examples) {
  EXPECT_EQ(format_distance(std::sqrt(5.0)), "2.2361");
  EXPECT_EQ(format_distance(0.0), "0.0");
  EXPECT_EQ(format_distance(2.5), "2.5");
  EXPECT_EQ(format_distance(3.0), "3.0");
  EXPECT_EQ(format_distance(0.00005), "0.0001");
  EXPECT_EQ(format_distance(0.00004999), "0.0");
  EXPECT_EQ(format_distance(9.99995), "10.0");
  EXPECT_EQ(format_distance(1.23456), "1.2346");
  EXPECT_THROW(format_distance(-1.0), std::invalid_argument);
  EXPECT_THROW(format_distance(NAN), std::invalid_argument);
}

// Independent oracle: integer rounding of value * 10^4.
TEST(FormatDistance, MatchesScaledRounding) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> dist(0.0, 1000.0);
  for (int i = 0; i < 5000; ++i) {
    const double v = dist(rng);
    const double scaled = v * 10000.0;
    if (std::abs(scaled - std::floor(scaled) - 0.5) < 1e-6) continue;
    const long long units = std::llround(scaled);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%lld.%04lld", units / 10000, units % 10000);
    std::string expected = buf;
    while (expected.back() == '0' && expected[expected.size() - 2] != '.') {
      expected.pop_back();
    }
    ASSERT_EQ(format_distance(v), expected) << v;
  }
}

TEST(Augment, GaryPizzaExactFacts) {
  const auto started = std::chrono::steady_clock::now();
  const std::string text = testing::fixture_text("gary-pizza.pddl");
  auto r = augment_with_distances(text);
  EXPECT_LT(std::chrono::steady_clock::now() - started, std::chrono::seconds(1));
  EXPECT_EQ(r.location_count, 2u);
  EXPECT_EQ(r.appended, 4u);
  const std::string expected_init =
      "(:init (hungry gary)\n"
      "         (location gary 4 2)\n"
      "         (location pizza 2 3)\n"
      "         (distance gary gary 0.0)\n"
      "         (distance gary pizza 2.2361)\n"
      "         (distance pizza gary 2.2361)\n"
      "         (distance pizza pizza 0.0))";
  EXPECT_NE(r.text.find(expected_init), std::string::npos) << r.text;
  using F = std::tuple<std::string, std::string, std::string>;
  EXPECT_EQ(distance_facts(r.text),
            (std::vector<F>{{"gary", "gary", "0.0"},
                            {"gary", "pizza", "2.2361"},
                            {"pizza", "gary", "2.2361"},
                            {"pizza", "pizza", "0.0"}}));
}

TEST(Augment, SingleLocation) {
  auto r = augment_with_distances(problem_with("(location a 7 7)"));
  using F = std::tuple<std::string, std::string, std::string>;
  EXPECT_EQ(distance_facts(r.text), (std::vector<F>{{"a", "a", "0.0"}}));
}

TEST(Augment, NoLocationsIsNoOp) {
  const std::string text = problem_with("(hungry gary)");
  auto r = augment_with_distances(text);
  EXPECT_EQ(r.text, text);
  EXPECT_TRUE(has_code(r.diagnostics, "no-locations"));
}

TEST(Augment, ErrorsPropagate) {
  EXPECT_THROW(augment_with_distances(problem_with("(location a 1) (location b 1 2)")),
               DistanceError);
}

TEST(Augment, DefaultOutputName) {
  EXPECT_EQ(default_distance_output("dir/p01.pddl"), "dir/p01_dist.pddl");
  EXPECT_EQ(default_distance_output("p"), "p_dist.pddl");
}

// n in {1, 2, 5, 20}, d in {1, 2, 3, 5}: 13 random problems per pair.
TEST(AugmentProperty, SquareLawSymmetryTriangle) {
  const auto started = std::chrono::steady_clock::now();
  std::mt19937 rng(424242);
  std::uniform_int_distribution<int> coord(-5000, 5000);
  int cases = 0;
  for (int n : {1, 2, 5, 20}) {
    for (int d : {1, 2, 3, 5}) {
      for (int rep = 0; rep < 13; ++rep, ++cases) {
        std::string facts = "(hungry gary)";
        for (int i = 0; i < n; ++i) {
          facts += "\n         (location o" + std::to_string(i);
          for (int k = 0; k < d; ++k) {
            char buf[32];
            std::snprintf(buf, sizeof buf, " %.2f", coord(rng) / 100.0);
            facts += buf;
          }
          facts += ")";
        }
        const std::string text = problem_with(facts);
        auto r = augment_with_distances(text);
        ASSERT_EQ(r.appended, static_cast<std::size_t>(n * n));

        auto emitted = distance_facts(r.text);
        ASSERT_EQ(emitted.size(), static_cast<std::size_t>(n * n));
        std::map<std::pair<std::string, std::string>, std::string> value;
        for (const auto& [a, b, v] : emitted) value[{a, b}] = v;
        for (const auto& [a, b, v] : emitted) {
          EXPECT_EQ(v, value.at({b, a}));
          if (a == b) EXPECT_EQ(v, "0.0");
        }

        auto parsed = parse_problem(r.text);
        EXPECT_FALSE(has_errors(parsed.diagnostics));
        EXPECT_EQ(parsed.problem.init.size(), static_cast<std::size_t>(1 + n + n * n));

        auto locs = extract_locations(text);
        for (const auto& a : locs.facts) {
          for (const auto& b : locs.facts) {
            for (const auto& c : locs.facts) {
              EXPECT_LE(euclidean(a.coords, c.coords),
                        euclidean(a.coords, b.coords) +
                            euclidean(b.coords, c.coords) + 1e-9);
            }
          }
        }
      }
    }
  }
  EXPECT_GE(cases, 200);
  EXPECT_LT(std::chrono::steady_clock::now() - started, std::chrono::seconds(5));
}

}  // namespace
}  // namespace pddlkit
