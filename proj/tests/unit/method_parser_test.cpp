#include "assertgen/error.hpp"
#include "assertgen/java/method_parser.hpp"

#include <gtest/gtest.h>

using assertgen::Error;
using assertgen::ErrorCode;
using namespace assertgen::java;

TEST(MethodParser, FocalMethodOfLast)
{
    auto methods = parse_methods("package p;\nclass Last {\n  char last(String s) {\n    return s[s.length-1];\n  }\n}\n");
    ASSERT_EQ(methods.size(), 1u);
    const auto& m = methods[0];
    EXPECT_EQ(m.name, "last");
    EXPECT_EQ(m.owner_class, "Last");
    EXPECT_EQ(m.package, "p");
    EXPECT_FALSE(m.is_constructor);
    ASSERT_EQ(m.params.size(), 1u);
    EXPECT_EQ(m.params[0].type_name, "String");
    EXPECT_EQ(m.params[0].name, "s");
    EXPECT_EQ(join(m.signature_tokens), "char last ( String s )");
    EXPECT_EQ(join(m.body_tokens), "{ return s [ s . length - 1 ] ; }");
    EXPECT_EQ(m.source_text, "char last(String s) {\n    return s[s.length-1];\n  }");
    EXPECT_EQ(m.qualified_id(), "p.Last#last(String)");
}

TEST(MethodParser, Constructor)
{
    auto methods = parse_methods("class Last { Last(int x){} }");
    ASSERT_EQ(methods.size(), 1u);
    EXPECT_TRUE(methods[0].is_constructor);
    EXPECT_EQ(methods[0].name, "Last");
}

TEST(MethodParser, UnbalancedBraceIsParseFailure)
{
    try {
        parse_methods("class Broken { void f() { ");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ParseFailure);
    }
    EXPECT_THROW(parse_methods("class X { String s = \"open; }"), Error);
}

TEST(MethodParser, DocCommentAnnotationsAndModifiers)
{
    const char* src = R"(
package a.b;
import java.util.*;
public class Calc {
    private int total = 0, count;
    /** Adds two numbers. */
    @Override
    public static <T extends Number> int add(final int a, @Nullable Map<String, List<T>> m, String... rest)
        throws IllegalStateException {
        return a;
    }
    // plain comment
    void reset() { total = 0; }
}
)";
    auto unit = parse_compilation_unit(src);
    EXPECT_EQ(unit.package, "a.b");
    ASSERT_EQ(unit.classes.size(), 1u);
    const auto& cls = unit.classes[0];
    EXPECT_EQ(cls.field_names, (std::vector<std::string>{"total", "count"}));
    ASSERT_EQ(cls.methods.size(), 2u);
    const auto& add = cls.methods[0];
    EXPECT_EQ(add.name, "add");
    ASSERT_TRUE(add.doc_text.has_value());
    EXPECT_EQ(*add.doc_text, "/** Adds two numbers. */");
    EXPECT_TRUE(add.has_annotation("Override"));
    ASSERT_EQ(add.params.size(), 3u);
    EXPECT_EQ(add.params[0].type_name, "int");
    EXPECT_EQ(add.params[1].type_name, "Map<String,List<T>>");
    EXPECT_EQ(add.params[1].name, "m");
    EXPECT_EQ(add.params[2].type_name, "String...");
    EXPECT_FALSE(cls.methods[1].doc_text.has_value());
}

TEST(MethodParser, NestedAndAnonymousClasses)
{
    const char* src = R"(
class Outer {
    Runnable r = new Runnable() { public void run() { go(); } };
    void go() {
        Comparator<String> c = new Comparator<String>() {
            public int compare(String a, String b) { return 0; }
        };
        Runnable l = () -> { System.out.println(); };
    }
    static class Inner {
        Inner() {}
        void work() {}
    }
    enum Mode { A, B { void special() {} }; void common() {} }
}
)";
    auto unit = parse_compilation_unit(src);
    ASSERT_EQ(unit.classes.size(), 3u);
    EXPECT_EQ(unit.classes[0].name, "Outer");
    EXPECT_EQ(unit.classes[1].name, "Inner");
    EXPECT_EQ(unit.classes[2].name, "Mode");
    auto methods = unit.all_methods();
    std::vector<std::pair<std::string, std::string>> got;
    for (const auto& m : methods) {
        got.emplace_back(m.owner_class, m.name);
    }
    std::vector<std::pair<std::string, std::string>> expected = {
        {"Outer", "run"},  {"Outer", "go"},    {"Outer", "compare"}, {"Inner", "Inner"},
        {"Inner", "work"}, {"Mode", "special"}, {"Mode", "common"},
    };
    EXPECT_EQ(got, expected);
    EXPECT_TRUE(methods[3].is_constructor);
}

TEST(MethodParser, InterfaceAndAbstractMembersWithoutBodies)
{
    auto methods = parse_methods("interface Shape { double area(); default String name() { return \"s\"; } }");
    ASSERT_EQ(methods.size(), 1u);
    EXPECT_EQ(methods[0].name, "name");
}

TEST(MethodParser, BodiesAreBalanced)
{
    const char* src = "class T { void a() { if (x) { y(); } } void b() { int[] q = {1, 2}; } }";
    for (const auto& m : parse_methods(src)) {
        EXPECT_TRUE(delimiters_balanced(m.body_tokens)) << m.name;
        EXPECT_EQ(m.body_tokens.front().text, "{");
        EXPECT_EQ(m.body_tokens.back().text, "}");
    }
}

TEST(MethodParser, EmptySourceHasNoMethods) { EXPECT_TRUE(parse_methods("").empty()); }
