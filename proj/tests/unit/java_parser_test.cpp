#include <gtest/gtest.h>

#include <algorithm>

#include "project_builder.hpp"
#include "sysmap/java_parser.hpp"

using namespace sysmap;
using sysmap::testing::parse_text;

namespace {

const MethodModel &method(const ClassModel &c, const std::string &name) {
  auto it = std::find_if(c.methods.begin(), c.methods.end(),
                         [&](const MethodModel &m) { return m.name == name; });
  if (it == c.methods.end())
    throw std::runtime_error("no method " + name);
  return *it;
}

bool refs(const ClassModel &c, const std::string &name) {
  return c.referenced_type_names.contains(name);
}

} // namespace

TEST(Parser, SimpleClassWithField) {
  const auto r = parse_text("package p; class A { int x; void m(){ if(x>0) x--; } }");
  ASSERT_FALSE(r.error);
  ASSERT_EQ(r.classes.size(), 1u);
  const auto &a = r.classes[0];
  EXPECT_EQ(a.qualified_name, "p.A");
  EXPECT_EQ(a.package_name, "p");
  ASSERT_EQ(a.fields.size(), 1u);
  ASSERT_EQ(a.methods.size(), 1u);
  EXPECT_EQ(a.methods[0].decision_points, 1u);
  EXPECT_EQ(a.methods[0].accessed_field_names, (std::set<std::string>{"x"}));
}

TEST(Parser, InterfaceWithAbstractMethod) {
  const auto r = parse_text("interface I { void f(); }");
  ASSERT_EQ(r.classes.size(), 1u);
  EXPECT_EQ(r.classes[0].kind, TypeKind::interface_type);
  ASSERT_EQ(r.classes[0].methods.size(), 1u);
  EXPECT_EQ(r.classes[0].methods[0].decision_points, 0u);
}

TEST(Parser, TwoTopLevelClassesInOrder) {
  const auto r = parse_text("class B {}\nclass A {}\n");
  ASSERT_EQ(r.classes.size(), 2u);
  EXPECT_EQ(r.classes[0].qualified_name, "B");
  EXPECT_EQ(r.classes[1].qualified_name, "A");
}

TEST(Parser, SyntaxErrorSkipsUnit) {
  const auto r = parse_text("package p; class A { void m( { }");
  ASSERT_TRUE(r.error);
  EXPECT_TRUE(r.classes.empty());
  EXPECT_NE(r.error->message.find("unit skipped"), std::string::npos);
}

TEST(Parser, SpanFromModifiersToClosingBrace) {
  const auto r = parse_text("package p;\n\n@Deprecated\npublic class A {\n\n\n\n"
                            "\n\n\n\n\n\n\n\n\n}\n");
  ASSERT_EQ(r.classes.size(), 1u);
  EXPECT_EQ(r.classes[0].start_line, 3u);
  EXPECT_EQ(r.classes[0].end_line, 17u);
  EXPECT_EQ(r.classes[0].loc_span, 15u);
}

TEST(Parser, OneLineClass) {
  const auto r = parse_text("class A{}");
  ASSERT_EQ(r.classes.size(), 1u);
  EXPECT_EQ(r.classes[0].loc_span, 1u);
}

TEST(Parser, CommentLinesInsideSpanOnly) {
  const auto r = parse_text("// before\nclass A {\n  // one\n  /* two\n     three */\n"
                            "  int x; // trailing\n}\n// after\n");
  ASSERT_EQ(r.classes.size(), 1u);
  EXPECT_EQ(r.classes[0].loc_span, 6u);
  EXPECT_EQ(r.classes[0].comment_lines_in_span, 3u);
}

TEST(Parser, DecisionPoints) {
  const auto r = parse_text(R"(class A {
    int m(int a, boolean b) {
      if (a > 0 && b) a++;
      for (int i = 0; i < a; i++) {}
      while (a > 10) a--;
      do { a++; } while (a < 3 || b);
      switch (a) { case 1: case 2: break; default: break; }
      try { a = a / 0; } catch (ArithmeticException e) {} catch (RuntimeException e) {}
      java.util.List<? extends Number> xs = null;
      return a > 1 ? a : -a;
    }
  })");
  ASSERT_EQ(r.classes.size(), 1u);
  // if, &&, for, while, do, ||, case×2, catch×2, ?:
  EXPECT_EQ(r.classes[0].methods[0].decision_points, 11u);
}

TEST(Parser, SwitchArrowsAndLambdas) {
  const auto r = parse_text(R"(class A {
    int m(int a) {
      Runnable r = () -> { if (a > 0) {} };
      return switch (a) { case 1, 2 -> 3; case 4 -> { yield 5; } default -> 0; };
    }
  })");
  ASSERT_EQ(r.classes.size(), 1u);
  EXPECT_EQ(r.classes[0].methods[0].decision_points, 3u);
}

TEST(Parser, ConstructorIsAMethod) {
  const auto r = parse_text("class A { int x; A(int v) { x = v; } }");
  ASSERT_EQ(r.classes[0].methods.size(), 1u);
  EXPECT_EQ(r.classes[0].methods[0].name, "A");
  EXPECT_EQ(r.classes[0].methods[0].accessed_field_names, (std::set<std::string>{"x"}));
}

TEST(Parser, LocalsShadowFields) {
  const auto r = parse_text(R"(class A {
    int x, y; String s;
    void a(int x) { y = x; }
    void b() { int s = 1; this.x = s; }
    void c() { java.util.List<String> l = null; l.forEach(y -> System.out.println(y)); }
    void d(Object o) { if (o instanceof String s) s.length(); }
  })");
  const auto &a = r.classes[0];
  EXPECT_EQ(method(a, "a").accessed_field_names, (std::set<std::string>{"y"}));
  EXPECT_EQ(method(a, "b").accessed_field_names, (std::set<std::string>{"x"}));
  EXPECT_TRUE(method(a, "c").accessed_field_names.empty());
  EXPECT_TRUE(method(a, "d").accessed_field_names.empty());
}

TEST(Parser, NestedClassesAreSeparate) {
  const auto r = parse_text(R"(package p;
class Outer {
  int f;
  static class Inner { int g; void m() { g++; } }
  interface Cb { void run(); }
  void m() { f++; }
})");
  ASSERT_EQ(r.classes.size(), 3u);
  EXPECT_EQ(r.classes[0].qualified_name, "p.Outer");
  EXPECT_EQ(r.classes[1].qualified_name, "p.Outer.Inner");
  EXPECT_EQ(r.classes[2].qualified_name, "p.Outer.Cb");
  EXPECT_EQ(r.classes[0].methods.size(), 1u);
  EXPECT_EQ(r.classes[0].fields.size(), 1u);
  EXPECT_EQ(r.classes[1].start_line, 4u);
}

TEST(Parser, AnonymousAndLocalClassesFoldIntoEnclosing) {
  const auto r = parse_text(R"(class A {
  Runnable r() {
    class Local { void go() { if (true) {} } }
    return new Runnable() { public void run() { while (false) {} } };
  }
})");
  ASSERT_EQ(r.classes.size(), 1u);
  const auto &a = r.classes[0];
  EXPECT_EQ(a.methods.size(), 3u);
  EXPECT_EQ(method(a, "go").decision_points, 1u);
  EXPECT_EQ(method(a, "run").decision_points, 1u);
  EXPECT_TRUE(refs(a, "Runnable"));
}

TEST(Parser, EnumsAndRecords) {
  const auto r = parse_text(R"(enum Color {
  RED { int f() { return 1; } }, GREEN;
  int f() { return 0; }
}
record Point(int x, int y) {
  Point { if (x < 0) throw new IllegalArgumentException(); }
  int sum() { return x + y; }
})");
  ASSERT_EQ(r.classes.size(), 2u);
  EXPECT_EQ(r.classes[0].kind, TypeKind::enum_type);
  EXPECT_TRUE(r.classes[0].fields.empty()); // constants are not fields
  EXPECT_EQ(r.classes[0].methods.size(), 2u);
  EXPECT_EQ(r.classes[1].fields.size(), 2u);
  EXPECT_EQ(method(r.classes[1], "sum").accessed_field_names,
            (std::set<std::string>{"x", "y"}));
}

TEST(Parser, HeritageAndReferences) {
  const auto r = parse_text(R"(package p;
import java.util.List;
class A<T> extends B<C> implements I, J<D> {
  E field;
  List<F> list;
  T generic;
  void m(G g) throws H {
    K k = new L();
    Object o = (M) g;
    boolean b = g instanceof N;
    Class<?> c = O.class;
    P.staticCall();
    q.r.S.T.member = 1;
    Runnable u = U::new;
    try {} catch (V | W e) {}
    int[] arr = new int[3];
    var v = 1;
  }
})");
  ASSERT_EQ(r.classes.size(), 1u);
  const auto &a = r.classes[0];
  EXPECT_EQ(a.superclass_name, "B");
  EXPECT_EQ(a.interface_names, (std::vector<std::string>{"I", "J"}));
  EXPECT_EQ(a.imports, (std::vector<std::string>{"java.util.List"}));
  for (const char *name : {"C", "D", "E", "List", "F", "G", "H", "K", "L", "M",
                           "N", "O", "P", "q.r.S.T", "U", "V", "W"})
    EXPECT_TRUE(refs(a, name)) << name;
  // type parameters, self, `var` and primitives are dropped
  for (const char *name : {"T", "A", "var", "int"})
    EXPECT_FALSE(refs(a, name)) << name;
}

TEST(Parser, AnnotationsAndGenericsDoNotConfuse) {
  const auto r = parse_text(R"(@SuppressWarnings({"a", "b"})
public final class A<K extends Comparable<? super K>, V> {
  @Inject private java.util.Map<K, java.util.List<V>> map = new java.util.HashMap<>();
  public <R extends Number> R pick(java.util.function.Function<? super K, ? extends R> f) {
    return f.apply(null);
  }
  boolean shift(int a) { return (a >> 2) > 0 && (a >>> 1) < 4; }
})");
  ASSERT_FALSE(r.error) << r.error->message;
  ASSERT_EQ(r.classes.size(), 1u);
  EXPECT_EQ(r.classes[0].methods.size(), 2u);
  EXPECT_EQ(r.classes[0].methods[0].decision_points, 0u);
  EXPECT_EQ(r.classes[0].methods[1].decision_points, 1u);
}

TEST(Parser, ModuleInfoHasNoTypes) {
  const auto r = parse_text("module foo.bar { requires java.base; }");
  EXPECT_FALSE(r.error);
  EXPECT_TRUE(r.classes.empty());
}

TEST(Parser, AnnotationTypeDeclaration) {
  const auto r = parse_text("@interface Marker { String value() default \"\"; int[] ids() default {}; }");
  ASSERT_FALSE(r.error) << r.error->message;
  ASSERT_EQ(r.classes.size(), 1u);
  EXPECT_EQ(r.classes[0].kind, TypeKind::interface_type);
  EXPECT_EQ(r.classes[0].methods.size(), 2u);
}
