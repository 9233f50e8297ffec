#include "assertgen/error.hpp"
#include "assertgen/java/assertions.hpp"
#include "assertgen/java/lexer.hpp"

#include <gtest/gtest.h>

using assertgen::Error;
using assertgen::ErrorCode;
using namespace assertgen::java;

namespace {

MethodUnit single_method(const std::string& body)
{
    for (auto& m : parse_methods("class FooTest { @Test void testIt() " + body + " }")) {
        if (m.name == "testIt") {
            return m;
        }
    }
    ADD_FAILURE() << "testIt not parsed";
    return {};
}

std::string span_text(const MethodUnit& m, const AssertionSite& s)
{
    TokenList sub(m.body_tokens.begin() + static_cast<std::ptrdiff_t>(s.token_span.begin),
                  m.body_tokens.begin() + static_cast<std::ptrdiff_t>(s.token_span.end));
    return join(sub);
}

}  // namespace

TEST(FindAssertions, AssertEqualsInFigureTest)
{
    auto m = single_method("{ char res = last(\"abc\"); assertEquals(res,'c'); }");
    auto sites = find_assertions(m);
    ASSERT_EQ(sites.size(), 1u);
    EXPECT_EQ(sites[0].kind, AssertionKind::AssertEquals);
    EXPECT_EQ(sites[0].arg_count, 2);
    EXPECT_FALSE(sites[0].has_message_param);
    EXPECT_EQ(span_text(m, sites[0]), "assertEquals ( res , 'c' ) ;");
}

TEST(FindAssertions, TryCatchFail)
{
    auto m = single_method("{ try { f(); fail(); } catch (IOException e) {} }");
    auto sites = find_assertions(m);
    ASSERT_EQ(sites.size(), 1u);
    EXPECT_EQ(sites[0].kind, AssertionKind::TryCatchFail);
    EXPECT_EQ(span_text(m, sites[0]), "try { f ( ) ; fail ( ) ; } catch ( IOException e ) { }");
    EXPECT_TRUE(is_acceptable_assertion(sites[0]));
}

TEST(FindAssertions, NoAssertions)
{
    EXPECT_TRUE(find_assertions(single_method("{ int x = compute(); log(x); }")).empty());
}

TEST(FindAssertions, QualifiedCallsAndNesting)
{
    auto m = single_method(R"({
        Assert.assertTrue(a);
        org.junit.Assert.assertNull(b);
        if (c) assertFalse(d);
        for (int i = 0; i < 3; i++) { Assertions.assertNotNull(items[i]); }
        assertThrows(IllegalStateException.class, () -> { assertTrue(hidden); });
        Runnable r = () -> { assertEquals(1, 2); };
        Object o = new Object() { void k() { assertTrue(inner); } };
        Truth.assertTrue(x);
        boolean z = assertTrue(q);
        try { g(); } catch (Exception e) { assertNotEquals(1, e.code()); }
    })");
    auto sites = find_assertions(m);
    std::vector<AssertionKind> kinds;
    for (const auto& s : sites) {
        kinds.push_back(s.kind);
    }
    std::vector<AssertionKind> expected = {AssertionKind::AssertTrue,    AssertionKind::AssertNull,
                                           AssertionKind::AssertFalse,   AssertionKind::AssertNotNull,
                                           AssertionKind::AssertThrows,  AssertionKind::AssertNotEquals};
    EXPECT_EQ(kinds, expected);
    EXPECT_EQ(span_text(m, sites[1]), "org . junit . Assert . assertNull ( b ) ;");
    EXPECT_EQ(sites[4].arg_count, 2);
}

TEST(FindAssertions, ArgumentCountingAndMessages)
{
    auto m = single_method(R"({
        assertEquals("msg", 1, x);
        assertEquals(1.0, y, 0.001);
        assertEquals(new HashMap<String, Integer>(), m);
        assertTrue(a < b, c > d);
        assertEquals(f(a, b), g(c));
        assertTrue(x);
    })");
    auto sites = find_assertions(m);
    ASSERT_EQ(sites.size(), 6u);
    EXPECT_EQ(sites[0].arg_count, 3);
    EXPECT_TRUE(sites[0].has_message_param);
    EXPECT_EQ(sites[1].arg_count, 3);
    EXPECT_EQ(sites[2].arg_count, 2);
    EXPECT_EQ(sites[3].arg_count, 2);
    EXPECT_EQ(sites[4].arg_count, 2);
    EXPECT_EQ(sites[5].arg_count, 1);
    std::vector<bool> acceptable;
    for (const auto& s : sites) {
        acceptable.push_back(is_acceptable_assertion(s));
    }
    EXPECT_EQ(acceptable, (std::vector<bool>{false, false, true, false, true, true}));
}

TEST(IsAcceptable, TableArity)
{
    AssertionSite s;
    s.kind = AssertionKind::AssertEquals;
    s.arg_count = 2;
    EXPECT_TRUE(is_acceptable_assertion(s));
    s.arg_count = 3;
    EXPECT_FALSE(is_acceptable_assertion(s));
    s.kind = AssertionKind::AssertTrue;
    s.arg_count = 1;
    EXPECT_TRUE(is_acceptable_assertion(s));
    s.arg_count = 2;
    EXPECT_FALSE(is_acceptable_assertion(s));
    s.kind = AssertionKind::AssertThrows;
    EXPECT_TRUE(is_acceptable_assertion(s));
    s.kind = AssertionKind::TryCatchFail;
    s.arg_count = 0;
    EXPECT_TRUE(is_acceptable_assertion(s));
}

TEST(MaskAssertion, FigureTest)
{
    auto methods = parse_methods("class LastTest { @Test void testLast() { char res = last(\"abc\"); assertEquals(res, 'c'); } }");
    const auto& m = methods.at(0);
    auto sites = find_assertions(m);
    auto masked = mask_assertion(m, sites.at(0));
    TokenList full = m.signature_tokens;
    full.insert(full.end(), masked.masked_tokens.begin(), masked.masked_tokens.end());
    EXPECT_EQ(join(full), "@ Test void testLast ( ) { char res = last ( \"abc\" ) ; <ASSERTION> }");
    EXPECT_EQ(join(masked.truth_tokens), "assertEquals ( res , 'c' ) ;");
}

TEST(MaskAssertion, WholeBody)
{
    auto m = single_method("{ assertNull(x); }");
    auto masked = mask_assertion(m, find_assertions(m).at(0));
    EXPECT_EQ(join(masked.masked_tokens), "{ <ASSERTION> }");
}

TEST(MaskAssertion, SpanOutOfRange)
{
    auto m = single_method("{ assertNull(x); }");
    AssertionSite bad;
    bad.token_span = {2, 99};
    try {
        mask_assertion(m, bad);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::SpanOutOfRange);
    }
}

// Brute-force oracle: rebuild the masked stream by hand-splicing token
// vectors, and check the token-count arithmetic for each of three sites.
TEST(MaskAssertion, MiddleSiteOfThreeLeavesOthersIntact)
{
    auto m = single_method("{ int a = f(); assertTrue(a > 0); assertEquals(3, a); assertNotNull(g(a)); }");
    auto sites = find_assertions(m);
    ASSERT_EQ(sites.size(), 3u);
    for (std::size_t k = 0; k < sites.size(); ++k) {
        auto masked = mask_assertion(m, sites[k]);
        std::vector<std::string> oracle;
        for (std::size_t i = 0; i < m.body_tokens.size(); ++i) {
            if (i == sites[k].token_span.begin) {
                oracle.push_back("<ASSERTION>");
            }
            if (i >= sites[k].token_span.begin && i < sites[k].token_span.end) {
                continue;
            }
            oracle.push_back(m.body_tokens[i].text);
        }
        EXPECT_EQ(texts(masked.masked_tokens), oracle);
        EXPECT_EQ(masked.masked_tokens.size(), m.body_tokens.size() - sites[k].token_span.size() + 1);
        // the two other assertions are still present
        auto remaining = find_assertions_in_block(masked.masked_tokens);
        EXPECT_EQ(remaining.size(), 2u);
        std::size_t placeholders = 0;
        for (const auto& t : masked.masked_tokens) {
            placeholders += t.text == "<ASSERTION>";
        }
        EXPECT_EQ(placeholders, 1u);
    }
    // site 2 of 3: the 7 tokens of `assertEquals(3, a);` collapse into one placeholder
    auto middle = mask_assertion(m, sites[1]);
    EXPECT_EQ(sites[1].token_span.size(), 7u);
    EXPECT_EQ(middle.masked_tokens.size(), m.body_tokens.size() - 6);
}

// Invariants over a fixture method: sites are sorted and disjoint, the
// splice round-trip restores the body, and every truth passes check_syntax.
TEST(MaskAssertion, RoundTripAndSyntaxInvariants)
{
    std::vector<std::string> bodies = {
        "{ x(); assertEquals(1, y); assertTrue(z); }",
        "{ try { f(); fail(\"no\"); } catch (IOException e) { } assertFalse(done); }",
        "{ assertThrows(Exception.class, () -> p.parse(\"\")); assertNotEquals(a, b); }",
        "{ String s = \"a b\"; assertEquals(\"a b\", s); assertNull(map.get(key)); assertNotNull(new int[]{1}); }",
        "{ try (Res r = open()) { r.go(); Assert.fail(); } catch (A | B e) { log(e); } finally { close(); } }",
    };
    for (const auto& body : bodies) {
        auto m = single_method(body);
        auto sites = find_assertions(m);
        ASSERT_FALSE(sites.empty()) << body;
        for (std::size_t k = 0; k < sites.size(); ++k) {
            if (k > 0) {
                EXPECT_LE(sites[k - 1].token_span.end, sites[k].token_span.begin) << body;
            }
            auto masked = mask_assertion(m, sites[k]);
            TokenList restored;
            for (const auto& t : masked.masked_tokens) {
                if (t.text == "<ASSERTION>") {
                    restored.insert(restored.end(), masked.truth_tokens.begin(), masked.truth_tokens.end());
                } else {
                    restored.push_back(t);
                }
            }
            EXPECT_EQ(restored, m.body_tokens) << body;
            EXPECT_TRUE(check_syntax(join(masked.truth_tokens))) << join(masked.truth_tokens);
        }
    }
}

TEST(CheckSyntax, Examples)
{
    EXPECT_TRUE(check_syntax("assertTrue(x.isEmpty());"));
    EXPECT_FALSE(check_syntax("assertEquals(a, \"unterminated"));
    EXPECT_TRUE(check_syntax("try { f(); fail(); } catch (Exception e) {}"));
}

TEST(CheckSyntax, ExpressionForms)
{
    std::vector<std::string> good = {
        "assertEquals(res, 'c')",
        "assertEquals ( IDENT_0 , CHAR_0 )",
        "Assert.assertEquals(-1, list.indexOf(null));",
        "assertEquals((int) x.get(), y[2] + 3 * (z - 1));",
        "assertThrows(IllegalArgumentException.class, () -> new Foo<>(null));",
        "assertEquals(Arrays.asList(1, 2), new ArrayList<List<String>>(m).stream().map(String::valueOf).collect(toList()));",
        "assertTrue(a instanceof String && !b || c ? d : e);",
        "assertEquals(int.class, String[].class.getComponentType());",
        "assertNotNull(new Object() { public String toString() { return \"\"; } });",
        "assertEquals(new int[] {1, 2}, new int[2]);",
        "assertEquals(x -> x + 1, f);",
        "this.helper(1);",
    };
    for (const auto& s : good) {
        EXPECT_TRUE(check_syntax(s)) << s;
    }
    std::vector<std::string> bad = {
        "assertEquals(",
        "assertEquals(a,, b);",
        "assertEquals(a b);",
        "x = 5;",
        "assertTrue(x));",
        "assertTrue(x); assertTrue(y);",
        "<ASSERTION>",
        "",
        "try { f(); }",
        "try { f(); } catch (e) {}",
        "assertEquals(1, 2) extra",
    };
    for (const auto& s : bad) {
        EXPECT_FALSE(check_syntax(s)) << s;
    }
}

TEST(AssertionTypeOf, Examples)
{
    EXPECT_EQ(assertion_type_of("assertNotNull(obj);"), AssertionKind::AssertNotNull);
    EXPECT_EQ(assertion_type_of("try { f(); fail(); } catch (Exception e) {}"), AssertionKind::TryCatchFail);
    EXPECT_EQ(assertion_type_of("assertThat(x, is(y));"), std::nullopt);
    EXPECT_EQ(assertion_type_of("Assertions.assertThrows(E.class, r);"), AssertionKind::AssertThrows);
    EXPECT_EQ(assertion_type_of("assertEquals(a, \"unterminated"), AssertionKind::AssertEquals);
    EXPECT_EQ(assertion_type_of("try { f(); } catch (Exception e) {}"), std::nullopt);
    EXPECT_EQ(assertion_type_of(""), std::nullopt);
}

TEST(AssertionKindNames, RoundTrip)
{
    for (auto k : kAllAssertionKinds) {
        EXPECT_EQ(assertion_kind_from_name(assertion_kind_name(k)), k);
    }
    EXPECT_EQ(assertion_kind_name(AssertionKind::TryCatchFail), "try-catch+fail");
}
