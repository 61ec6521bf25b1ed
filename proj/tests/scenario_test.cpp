#include <gtest/gtest.h>

#include <string>

#include "orlicz/commands.hpp"
#include "orlicz/scenario.hpp"

using namespace orlicz;

namespace {

const char* kFinite = R"({
  "space": {"kind": "finite", "atoms": [["a", 4.0], ["b", 1.0]]},
  "young": {"phi": "power_abs:2", "pw": {"family": "piecewise", "points": [[0, 0], [1, 1], [2, 3]]}},
  "functions": {"chiA": {"indicator": ["a"]}, "f": {"values": [1.5, -2]}},
  "maps": {"swap": {"targets": [2, 1]}}
})";

std::string with_data(const std::string& file) { return std::string(ORLICZ_TEST_DATA) + "/" + file; }

}  // namespace

TEST(Scenario, ParsesFiniteScenario) {
  const auto s = parse_scenario_text(kFinite);
  ASSERT_TRUE(s.space.has_value());
  EXPECT_EQ(s.space->depth(), 2);
  EXPECT_EQ(s.function("chiA").at(1), 1.0);
  EXPECT_EQ(s.function("chiA").at(2), 0.0);
  EXPECT_EQ(s.map("swap").at(1), 2);
  EXPECT_DOUBLE_EQ(s.young_function("pw")(1.5), 2.0);
  EXPECT_DOUBLE_EQ(s.young_function("power_over_p:2")(2.0), 2.0);
}

TEST(Scenario, YoungRecordForm) {
  const auto s = parse_scenario_text(R"({"young": {"q": {"family": "power_over_p", "p": 3}}})");
  EXPECT_EQ(s.young_function("q").name(), "power_over_p:3");
}

TEST(Scenario, RoundTrip) {
  const auto a = parse_scenario_text(kFinite);
  const auto b = parse_scenario(to_json(a));
  EXPECT_EQ(to_json(a), to_json(b));
}

TEST(Scenario, UnknownNameIsAnError) {
  const auto s = parse_scenario_text(kFinite);
  EXPECT_THROW(s.function("missing"), ScenarioError);
  EXPECT_THROW(s.map("missing"), ScenarioError);
  EXPECT_THROW(load_scenario(with_data("unknown_name.json")), ScenarioError);
}

TEST(Scenario, ParseErrorCarriesLine) {
  try {
    parse_scenario_text("{\n  \"space\": {\n    \"kind\": \"finite\",,\n  }\n}");
    FAIL() << "expected a parse error";
  } catch (const ScenarioError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(Scenario, ValidationErrorCarriesPath) {
  try {
    parse_scenario_text(R"({"space": {"kind": "finite", "atoms": [1.0, -2.0]}})");
    FAIL() << "expected a validation error";
  } catch (const ScenarioError& e) {
    EXPECT_NE(std::string(e.what()).find("/space/atoms/1"), std::string::npos) << e.what();
  }
}

TEST(Scenario, CountableGeometricLoads) {
  const auto s = load_scenario(with_data("geometric.json"));
  ASSERT_TRUE(s.space.has_value());
  EXPECT_FALSE(s.space->is_finite());
  EXPECT_EQ(s.space->depth(), 64);
  EXPECT_EQ(s.params.seed, 7u);
  EXPECT_EQ(s.runs.size(), 4u);
  EXPECT_EQ(s.map("shift").at(100), 101);
}

TEST(Scenario, InfinityIsEncodedAsString) {
  EXPECT_EQ(number_json(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_TRUE(std::isinf(number_from("inf", "/x")));
}

TEST(Scenario, NormCommandReport) {
  const auto s = parse_scenario_text(kFinite);
  CommandRequest req;
  req.command = "norm";
  req.args = {"chiA"};
  req.young = "phi";
  const auto report = run_command(s, req);
  EXPECT_EQ(report.at("command"), "norm");
  EXPECT_NEAR(report.at("results").at("luxemburg").at("value").get<double>(), 2.0, 1e-9);
}
