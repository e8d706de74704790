#include "pebble/error.hpp"
#include "pebble/io.hpp"

#include <gtest/gtest.h>

using namespace pebble;

TEST(LinesJson, RoundTripAndDiagnostics)
{
  const auto lines = generate(Family::GeneralPosition, 4, 3);
  const auto j = lines_to_json(lines);
  EXPECT_EQ(lines_from_json(nlohmann::json::parse(j.dump())), lines);

  const auto ints = nlohmann::json::parse(R"({"lines":[{"a":2,"b":0,"c":"-4"}]})");
  EXPECT_EQ(lines_from_json(ints), (std::vector<Line>{Line(1, 0, -2)}));

  try {
    lines_from_json(nlohmann::json::parse(R"({"lines":[{"a":"1","b":"0","c":"0"},{"a":"x","b":"1","c":"0"}]})"));
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("lines[1].a"), std::string::npos);
  }
  EXPECT_THROW(lines_from_json(nlohmann::json::parse(R"({"lines":[{"a":0,"b":0,"c":1}]})")), InputError);
  EXPECT_THROW(lines_from_json(nlohmann::json::parse(R"({"pebbles":[]})")), InputError);
}

TEST(DistributionJson, Parse)
{
  EXPECT_EQ(distribution_from_json(nlohmann::json::parse(R"({"pebbles":[1,2,3]})")), (Distribution{1, 2, 3}));
  EXPECT_THROW(distribution_from_json(nlohmann::json::parse(R"({"pebbles":[1,-2]})")), InputError);
  EXPECT_EQ(distribution_to_json(Distribution{4, 5}).dump(), R"({"pebbles":[4,5]})");
}

TEST(Analysis, ExactFieldsAndPolygons)
{
  const auto arr = Arrangement::build(generate(Family::Parallel, 3, 0));
  const auto j = analysis_to_json(arr, true);
  EXPECT_EQ(j["R"], 4);
  EXPECT_EQ(j["f_value"], 8);
  EXPECT_EQ(j["lines"][1]["rank"], 2);
  EXPECT_EQ(j["lines"][1]["smaller_side"], "minus");
  EXPECT_EQ(j["cells"][0]["id"], 1);
  EXPECT_EQ(j["cells"][0]["signs"], "+++");
  EXPECT_TRUE(j["cells"][0]["witness"]["x"].is_string());
  EXPECT_GE(j["cells"][0]["polygon"].size(), 3U);
  EXPECT_EQ(j["dual_edges"].size(), 3U);
  EXPECT_FALSE(analysis_to_json(arr, false)["cells"][0].contains("polygon"));
}

TEST(Diagnostics, MonovariantSnapshot)
{
  const auto arr = std::make_shared<const Arrangement>(Arrangement::build(generate(Family::Parallel, 3, 0)));
  GameState s(arr, {2, 1, 2, 2});
  MonovariantBob bob(*arr);
  (void)bob.choose_line(s);
  const auto j = bob_diagnostics(bob, s);
  EXPECT_EQ(j["strategy"], "monovariant");
  EXPECT_EQ(j["stage"]["focal"], 4);
  EXPECT_EQ(j["stage"]["sequence"][0]["line"], 2);
  EXPECT_EQ(j["stage"]["sequence"][0]["rank"], 2);
  EXPECT_EQ(j["stage"]["stack"].size(), 0U);
  EXPECT_EQ(j["X"], 8);
}

TEST(Diagnostics, AutopilotResidual)
{
  const auto arr = std::make_shared<const Arrangement>(Arrangement::build(generate(Family::Grid, 3, 0)));
  GameState s(arr, reference_distribution(*arr).pebbles);
  AutopilotAlice alice(Orientation::optimal(*arr));
  const auto j = alice_diagnostics(alice, s);
  for (const auto& r : j["residual"])
    EXPECT_EQ(r, 0);
  EXPECT_EQ(j["minus_sides"].size(), 3U);
}
