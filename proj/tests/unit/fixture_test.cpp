#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>

#include "fixture_bundle.hpp"
#include "fixture_oracle.hpp"
#include "layout_check.hpp"
#include "temp_dir.hpp"

using namespace sysmap;
using namespace sysmap::testing;

TEST(Fixture, MetricsMatchHandCountedOracle) {
  const CityBundle b = fixture_bundle();
  const auto &classes = b.snapshots.at(0).classes;
  ASSERT_EQ(classes.size(), kFixtureOracle.size());
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const auto &got = classes[i];
    const auto &want = kFixtureOracle[i];
    SCOPED_TRACE(std::string(want.name));
    EXPECT_EQ(got.qualified_name, want.name);
    EXPECT_EQ(got.loc, want.loc);
    EXPECT_NEAR(got.comment_percentage, oracle_comment_percentage(want), 1e-9);
    EXPECT_EQ(got.cbo, want.cbo);
    EXPECT_EQ(got.lcom, want.lcom);
    EXPECT_EQ(got.wmc, want.wmc);
    EXPECT_EQ(got.noc, want.noc);
    EXPECT_EQ(got.dit, want.dit);
  }
  const auto &agg = b.snapshots[0].aggregates;
  EXPECT_EQ(agg.package_count, kFixturePackages);
  EXPECT_EQ(agg.class_count, kFixtureOracle.size());
  EXPECT_EQ(agg.total_loc, kFixtureTotalLoc);
  EXPECT_EQ(agg.total_wmc, kFixtureTotalWmc);
}

TEST(Fixture, DetectionLimitsFromOracle) {
  const CityBundle b = fixture_bundle();
  const auto &d = b.evolution.detections.at(0);
  ASSERT_TRUE(d.thresholds);
  // 2 × 85 / 20 and 2 × 407 / 20
  EXPECT_DOUBLE_EQ(d.thresholds->skyscraper_height_limit, 8.5);
  EXPECT_DOUBLE_EQ(d.thresholds->heavy_base_limit, 40.7);
  EXPECT_EQ(d.skyscrapers, (std::vector<std::string>{"com.acme.util.Strings"}));
  EXPECT_EQ(d.heavy_classes, (std::vector<std::string>{
                                 "com.acme.app.Config", "com.acme.shapes.Canvas"}));
}

TEST(Fixture, LayoutSound) {
  const CityBundle b = fixture_bundle();
  const auto &city = b.snapshots[0].city;
  EXPECT_EQ(layout_problem(city), "");
  EXPECT_EQ(city.plots.size(), kFixturePackages);
  // Classes under 10 LOC stay off the map.
  std::size_t expected = 0;
  for (const auto &row : kFixtureOracle)
    expected += row.loc >= 10 ? 1 : 0;
  EXPECT_EQ(city.building_count(), expected);
}

TEST(Fixture, GoldenBundle) {
  const auto golden = fixture_dir() / "golden" / "fixture_bundle.json";
  const std::string text = serialize_bundle(fixture_bundle());
  if (std::getenv("SYSMAP_UPDATE_GOLDEN")) {
    std::ofstream(golden, std::ios::binary) << text;
    GTEST_SKIP() << "golden file rewritten";
  }
  ASSERT_TRUE(std::filesystem::exists(golden)) << golden;
  EXPECT_EQ(text, read_file(golden));
  EXPECT_EQ(layout_problem(parse_bundle(read_file(golden)).snapshots[0].city), "");
}
