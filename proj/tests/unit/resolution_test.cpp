#include <gtest/gtest.h>

#include "project_builder.hpp"

using namespace sysmap;
using sysmap::testing::project_of;

TEST(Resolution, SamePackageWinsOverOtherPackage) {
  const auto p = project_of({{"p/A.java", "package p; class A {}"},
                             {"q/A.java", "package q; class A {}"},
                             {"p/U.java", "package p; class U { A a; }"}});
  EXPECT_EQ(p.resolve(*p.find("p.U"), "A"), "p.A");
}

TEST(Resolution, DefaultPackage) {
  const auto p = project_of({{"A.java", "class A {}"}});
  ASSERT_EQ(p.packages.size(), 1u);
  ASSERT_TRUE(p.packages.contains(""));
  EXPECT_EQ(p.packages.at("")[0].qualified_name, "A");
}

TEST(Resolution, SingleTypeImportBeatsSamePackage) {
  const auto p = project_of({{"p/A.java", "package p; class A {}"},
                             {"q/A.java", "package q; public class A {}"},
                             {"p/U.java", "package p; import q.A; class U { A a; }"}});
  EXPECT_EQ(p.resolve(*p.find("p.U"), "A"), "q.A");
}

TEST(Resolution, ExternalImportShadowsProjectClass) {
  const auto p = project_of({{"p/List.java", "package p; class List {}"},
                             {"q/U.java", "package q; import java.util.List; class U {}"}});
  EXPECT_EQ(p.resolve(*p.find("q.U"), "List"), std::nullopt);
}

TEST(Resolution, OnDemandImport) {
  const auto p = project_of({{"q/B.java", "package q; public class B {}"},
                             {"r/B.java", "package r; public class B {}"},
                             {"p/U.java", "package p; import q.*; class U {}"}});
  EXPECT_EQ(p.resolve(*p.find("p.U"), "B"), "q.B");
}

TEST(Resolution, UniqueSimpleNameFallback) {
  const auto p = project_of({{"q/B.java", "package q; public class B {}"},
                             {"p/U.java", "package p; class U {}"}});
  EXPECT_EQ(p.resolve(*p.find("p.U"), "B"), "q.B");
}

TEST(Resolution, AmbiguousSimpleNameIsExternal) {
  const auto p = project_of({{"q/B.java", "package q; public class B {}"},
                             {"r/B.java", "package r; public class B {}"},
                             {"p/U.java", "package p; class U {}"}});
  EXPECT_EQ(p.resolve(*p.find("p.U"), "B"), std::nullopt);
}

TEST(Resolution, NestedAndQualifiedNames) {
  const auto p = project_of(
      {{"p/O.java", "package p; class O { static class I { class J {} } }"},
       {"q/U.java", "package q; import p.O; class U {}"}});
  const auto &u = *p.find("q.U");
  EXPECT_EQ(p.resolve(u, "O.I"), "p.O.I");
  EXPECT_EQ(p.resolve(u, "O.I.J"), "p.O.I.J");
  EXPECT_EQ(p.resolve(u, "p.O.I"), "p.O.I");
  EXPECT_EQ(p.resolve(u, "p.O.CONSTANT"), "p.O");
  // From inside the nest, simple names of siblings resolve.
  EXPECT_EQ(p.resolve(*p.find("p.O.I.J"), "I"), "p.O.I");
  EXPECT_EQ(p.resolve(*p.find("p.O.I.J"), "J"), "p.O.I.J");
}

TEST(Resolution, DuplicateClassIsInputError) {
  EXPECT_THROW(project_of({{"a/A.java", "package p; class A {}"},
                           {"b/A.java", "package p; class A {}"}}),
               InputError);
}

TEST(Resolution, BrokenUnitIsSkippedWithWarning) {
  DiagnosticLog log;
  const auto p = project_of({{"A.java", "class A {}"}, {"B.java", "class B {"}}, &log);
  EXPECT_EQ(p.class_count(), 1u);
  ASSERT_EQ(log.size(), 1u);
  EXPECT_EQ(log[0].path, "B.java");
}

TEST(Resolution, ParallelBuildMatchesSequential) {
  std::vector<SourceFile> files;
  for (int i = 0; i < 40; ++i)
    files.push_back(make_source_file("C" + std::to_string(i) + ".java",
                                     "package p; class C" + std::to_string(i) +
                                         " extends C" + std::to_string((i + 1) % 40) + " {}"));
  DiagnosticLog l1, l2;
  const auto seq = build_project(files, "v", l1, 1);
  const auto par = build_project(files, "v", l2, 8);
  EXPECT_EQ(seq, par);
}
