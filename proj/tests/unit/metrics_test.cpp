#include <gtest/gtest.h>

#include "project_builder.hpp"
#include "sysmap/metrics.hpp"

using namespace sysmap;
using sysmap::testing::parse_text;
using sysmap::testing::project_of;

namespace {

ClassModel one_class(const std::string &text) {
  auto r = parse_text(text);
  if (r.error || r.classes.size() != 1)
    throw std::runtime_error("expected one class");
  return r.classes[0];
}

ClassMetrics metrics_of(const MetricsResult &r, const std::string &name) {
  for (const auto &m : r.classes)
    if (m.qualified_name == name)
      return m;
  throw std::runtime_error("no metrics for " + name);
}

} // namespace

TEST(Loc, OneLineClass) { EXPECT_EQ(compute_loc(one_class("class A{}")), 1u); }

TEST(CommentPercentage, ZeroAndQuarter) {
  EXPECT_DOUBLE_EQ(compute_comment_percentage(one_class("class A{}")), 0.0);
  std::string text = "class A {\n";
  for (int i = 0; i < 5; ++i)
    text += "  // note\n";
  for (int i = 0; i < 13; ++i)
    text += "  int f" + std::to_string(i) + ";\n";
  text += "}\n";
  const auto a = one_class(text);
  ASSERT_EQ(a.loc_span, 20u);
  EXPECT_DOUBLE_EQ(compute_comment_percentage(a), 25.0);
}

TEST(Wmc, Examples) {
  EXPECT_EQ(compute_wmc(one_class("class A{}")), 0u);
  EXPECT_EQ(compute_wmc(one_class("class A { boolean a, b; void m() { if (a && b) {} } }")), 3u);
  EXPECT_EQ(compute_wmc(one_class("class A { void a(){} void b(){} void c(){} }")), 3u);
}

TEST(Lcom, Examples) {
  EXPECT_EQ(compute_lcom(one_class("class A { int x; void m() { x++; } }")), 0u);
  EXPECT_EQ(compute_lcom(one_class("class A { int x, y; void a() { x++; } void b() { y++; } }")), 1u);
  EXPECT_EQ(compute_lcom(one_class("class A { int x; void a() { x++; } void b() { x--; } }")), 0u);
  // P=2 (a-c, b-c), Q=1 (a-b)
  EXPECT_EQ(compute_lcom(one_class(
                "class A { int x, y; void a() { x++; } void b() { x--; } void c() { y++; } }")),
            1u);
}

TEST(Cbo, Examples) {
  const auto p = project_of({{"p/A.java", "package p; class A extends B { C c; String s; }"},
                             {"p/B.java", "package p; class B {}"},
                             {"p/C.java", "package p; class C { java.util.List<String> l; }"},
                             {"p/D.java", "package p; class D { D self; }"}});
  EXPECT_EQ(compute_cbo(*p.find("p.A"), p), 2u);
  EXPECT_EQ(compute_cbo(*p.find("p.B"), p), 0u);
  EXPECT_EQ(compute_cbo(*p.find("p.C"), p), 0u); // externals only
  EXPECT_EQ(compute_cbo(*p.find("p.D"), p), 0u); // self excluded
}

TEST(Noc, SubclassesAndImplementors) {
  const auto p = project_of({{"p/Base.java", "package p; class Base {}"},
                             {"p/X.java", "package p; class X extends Base {}"},
                             {"p/Y.java", "package p; class Y extends Base {}"},
                             {"p/Z.java", "package p; class Z extends Base implements I {}"},
                             {"p/I.java", "package p; interface I {}"},
                             {"p/K.java", "package p; class K implements I {}"},
                             {"p/G.java", "package p; class G extends X {}"}});
  EXPECT_EQ(compute_noc(*p.find("p.Base"), p), 3u);
  EXPECT_EQ(compute_noc(*p.find("p.I"), p), 2u);
  EXPECT_EQ(compute_noc(*p.find("p.G"), p), 0u);
  const auto all = compute_all(p);
  EXPECT_EQ(metrics_of(all, "p.Base").noc, 3u);
  EXPECT_EQ(metrics_of(all, "p.I").noc, 2u);
}

TEST(Dit, Chains) {
  const auto p = project_of({{"p/A.java", "package p; class A {}"},
                             {"p/B.java", "package p; class B extends A {}"},
                             {"p/C.java", "package p; class C extends B {}"},
                             {"p/E.java", "package p; class E extends java.util.ArrayList<String> {}"}});
  EXPECT_EQ(compute_dit(*p.find("p.A"), p), 0u);
  EXPECT_EQ(compute_dit(*p.find("p.C"), p), 2u);
  EXPECT_EQ(compute_dit(*p.find("p.E"), p), 0u);
}

TEST(Dit, CycleStopsWithWarning) {
  const auto p = project_of({{"p/A.java", "package p; class A extends B {}"},
                             {"p/B.java", "package p; class B extends A {}"}});
  DiagnosticLog log;
  EXPECT_EQ(compute_dit(*p.find("p.A"), p, &log), 1u);
  ASSERT_EQ(log.size(), 1u);
  EXPECT_NE(log[0].message.find("cycle"), std::string::npos);
}

TEST(ComputeAll, EmptyProject) {
  ProjectModel p;
  p.version_label = "0";
  const auto r = compute_all(p);
  EXPECT_TRUE(r.classes.empty());
  EXPECT_EQ(r.aggregates.package_count, 0u);
  EXPECT_EQ(r.aggregates.class_count, 0u);
  EXPECT_EQ(r.aggregates.total_loc, 0u);
  EXPECT_EQ(r.aggregates.total_wmc, 0u);
}

TEST(ComputeAll, SortedAndAggregated) {
  const auto p = project_of({{"q/Z.java", "package q; class Z { void a(){} }"},
                             {"p/A.java", "package p;\nclass A {\n void a(){ if (true) {} }\n}"}});
  const auto r = compute_all(p);
  ASSERT_EQ(r.classes.size(), 2u);
  EXPECT_EQ(r.classes[0].qualified_name, "p.A");
  EXPECT_EQ(r.aggregates.package_count, 2u);
  EXPECT_EQ(r.aggregates.total_loc, 4u);
  EXPECT_EQ(r.aggregates.total_wmc, 3u);
}
