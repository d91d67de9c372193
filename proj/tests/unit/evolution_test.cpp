#include <gtest/gtest.h>

#include <cmath>

#include "sysmap/evolution.hpp"

using namespace sysmap;

namespace {

std::vector<ClassMetrics> with_wmc(std::initializer_list<std::size_t> values) {
  std::vector<ClassMetrics> out;
  int i = 0;
  for (auto v : values) {
    ClassMetrics m;
    m.qualified_name = "C" + std::to_string(i++);
    m.wmc = v;
    m.loc = 10;
    out.push_back(m);
  }
  return out;
}

std::vector<ClassMetrics> with_loc(std::initializer_list<std::size_t> values) {
  std::vector<ClassMetrics> out;
  int i = 0;
  for (auto v : values) {
    ClassMetrics m;
    m.qualified_name = "C" + std::to_string(i++);
    m.loc = v;
    m.wmc = 1;
    out.push_back(m);
  }
  return out;
}

VersionSnapshot snapshot(std::string label, std::vector<ClassMetrics> classes,
                         std::size_t packages = 1) {
  VersionSnapshot s;
  s.version_label = label;
  s.aggregates = aggregate(label, packages, classes);
  s.classes = std::move(classes);
  s.city.version_label = label;
  return s;
}

} // namespace

TEST(SkyscraperLimit, TwiceMean) {
  EXPECT_DOUBLE_EQ(skyscraper_limit(with_wmc({1, 2, 3})), 4.0);
  EXPECT_DOUBLE_EQ(skyscraper_limit(with_wmc({5, 5, 5, 5})), 10.0);
  EXPECT_THROW(skyscraper_limit({}), AnalysisError);
}

TEST(HeavyLimit, TwiceMean) {
  EXPECT_DOUBLE_EQ(heavy_limit(with_loc({10, 20, 30})), 40.0);
  EXPECT_DOUBLE_EQ(heavy_limit(with_loc({100})), 200.0);
  EXPECT_TRUE(detect("v", with_loc({100})).heavy_classes.empty());
  EXPECT_THROW(heavy_limit({}), AnalysisError);
}

TEST(Detect, Examples) {
  const auto d = detect("v", with_wmc({1, 1, 10}));
  ASSERT_TRUE(d.thresholds);
  EXPECT_DOUBLE_EQ(d.thresholds->skyscraper_height_limit, 8.0);
  EXPECT_EQ(d.skyscrapers, (std::vector<std::string>{"C2"}));

  const auto uniform = detect("v", with_wmc({5, 5, 5}));
  EXPECT_TRUE(uniform.skyscrapers.empty());
  EXPECT_TRUE(uniform.heavy_classes.empty());
}

TEST(Detect, StrictlyAboveAndOrdered) {
  // mean 4, limit 8: the 8 is not a skyscraper; 9s tie and sort by name.
  auto ms = with_wmc({1, 1, 1, 8, 9, 9, 1, 2});
  ms[5].qualified_name = "A";
  const auto d = detect("v", ms);
  EXPECT_DOUBLE_EQ(d.thresholds->skyscraper_height_limit, 8.0);
  EXPECT_EQ(d.skyscrapers, (std::vector<std::string>{"A", "C4"}));
}

TEST(ChartEntry, LnValuesAndZeroFlags) {
  VersionAggregates a{"v", 0, 1, 85722, 7};
  const auto e = chart_entry(a);
  EXPECT_TRUE(e.zero[0]);
  EXPECT_EQ(e.ln_values[0], 0.0);
  EXPECT_FALSE(e.zero[1]);
  EXPECT_EQ(e.ln_values[1], 0.0);
  EXPECT_NEAR(e.ln_values[2], 11.359, 5e-4);
  EXPECT_NEAR(std::exp(e.ln_values[3]), 7.0, 7.0 * 1e-12);
}

TEST(BuildReport, OrderPreservedAndEmptyVersion) {
  const auto report = build_report({snapshot("2.0", with_wmc({1, 2})),
                                    snapshot("1.0", with_wmc({3})),
                                    snapshot("0.1", {}, 0)});
  ASSERT_EQ(report.versions.size(), 3u);
  EXPECT_EQ(report.versions[0].version_label, "2.0");
  EXPECT_EQ(report.chart_series[1].version_label, "1.0");
  EXPECT_EQ(report.detections[2].version_label, "0.1");
  EXPECT_FALSE(report.detections[2].thresholds);
  EXPECT_TRUE(report.chart_series[2].zero[1]);
}

TEST(BuildReport, SingleVersion) {
  const auto report = build_report({snapshot("4.9", with_wmc({1}))});
  EXPECT_EQ(report.versions.size(), 1u);
  EXPECT_EQ(report.detections.size(), 1u);
}

TEST(BuildReport, Rejections) {
  EXPECT_THROW(build_report({}), InputError);
  EXPECT_THROW(build_report({snapshot("a", {}), snapshot("a", {})}), InputError);
}
