#include "assertgen/error.hpp"
#include "assertgen/java/lexer.hpp"

#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

using assertgen::Error;
using assertgen::ErrorCode;
using namespace assertgen::java;

namespace {

std::vector<std::string> lex_texts(std::string_view src, LexOptions opts = {})
{
    return texts(tokenize(src, opts));
}

}  // namespace

TEST(Lexer, CharLiteralIsOneToken)
{
    auto toks = tokenize("assertEquals(res, 'c');");
    std::vector<std::string> expected = {"assertEquals", "(", "res", ",", "'c'", ")", ";"};
    EXPECT_EQ(texts(toks), expected);
    EXPECT_EQ(toks[4].kind, TokenKind::CharLit);
    EXPECT_EQ(toks[0].kind, TokenKind::Identifier);
    EXPECT_EQ(toks[5].offset, 21u);
}

TEST(Lexer, EmptyInput) { EXPECT_TRUE(tokenize("").empty()); }

TEST(Lexer, ArrayIndexExpression)
{
    std::vector<std::string> expected = {"return", "s", "[", "s", ".", "length", "-", "1", "]", ";"};
    EXPECT_EQ(lex_texts("return s[s.length-1];"), expected);
}

TEST(Lexer, CommentsAreDropped)
{
    auto res = lex("int a; // trailing\n/** doc */ int b; /* block */");
    std::vector<std::string> expected = {"int", "a", ";", "int", "b", ";"};
    EXPECT_EQ(texts(res.tokens), expected);
    ASSERT_EQ(res.comments.size(), 3u);
    EXPECT_TRUE(res.comments[1].is_doc);
    EXPECT_FALSE(res.comments[2].is_doc);
}

TEST(Lexer, StringWithSpacesAndEscapes)
{
    auto toks = tokenize(R"(f("hello world", "q\"x", '\'');)");
    ASSERT_EQ(toks.size(), 9u);
    EXPECT_EQ(toks[2].text, "\"hello world\"");
    EXPECT_EQ(toks[4].text, R"("q\"x")");
    EXPECT_EQ(toks[6].text, R"('\'')");
    EXPECT_EQ(toks[6].kind, TokenKind::CharLit);
}

TEST(Lexer, TextBlockIsOneToken)
{
    auto toks = tokenize("s = \"\"\"\n  a \"b\"\n  \"\"\";");
    ASSERT_EQ(toks.size(), 4u);
    EXPECT_EQ(toks[2].kind, TokenKind::StringLit);
}

TEST(Lexer, UnterminatedLiterals)
{
    for (const char* src : {"assertEquals(a, \"unterminated", "char c = 'x", "/* never closed", "\"a\nb\""}) {
        try {
            tokenize(src);
            FAIL() << "expected UnterminatedLiteral for " << src;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::UnterminatedLiteral) << src;
        }
    }
}

TEST(Lexer, NumericLiterals)
{
    auto toks = tokenize("1 42L 0x1F 0b101 1_000 3.14 1e10 2.5f 1d .5 0x1.8p1 7.");
    std::vector<TokenKind> kinds;
    for (const auto& t : toks) {
        kinds.push_back(t.kind);
    }
    std::vector<TokenKind> expected = {
        TokenKind::IntLit,   TokenKind::IntLit,   TokenKind::IntLit,   TokenKind::IntLit,
        TokenKind::IntLit,   TokenKind::FloatLit, TokenKind::FloatLit, TokenKind::FloatLit,
        TokenKind::FloatLit, TokenKind::FloatLit, TokenKind::FloatLit, TokenKind::FloatLit,
    };
    EXPECT_EQ(kinds, expected);
}

TEST(Lexer, KeywordsLiteralsAndOperators)
{
    auto toks = tokenize("if (x >>>= 2 && y != null || true) a -> b :: c ... ;");
    EXPECT_EQ(toks[0].kind, TokenKind::Keyword);
    EXPECT_EQ(toks[3].text, ">>>=");
    EXPECT_EQ(toks[3].kind, TokenKind::Operator);
    EXPECT_EQ(toks[8].kind, TokenKind::NullLit);
    EXPECT_EQ(toks[10].kind, TokenKind::BoolLit);
    EXPECT_EQ(toks[13].text, "->");
    EXPECT_EQ(toks[15].text, "::");
    EXPECT_EQ(toks[17].text, "...");
}

TEST(Lexer, AnnotationsAreMarked)
{
    auto toks = tokenize("@Test @org.junit.Ignore(\"x\") void f() {}");
    EXPECT_EQ(toks[0].kind, TokenKind::Annotation);
    EXPECT_EQ(toks[1].kind, TokenKind::Annotation);
    EXPECT_EQ(toks[3].kind, TokenKind::Annotation);  // org
    EXPECT_EQ(toks[5].kind, TokenKind::Annotation);  // junit
    EXPECT_EQ(toks[7].kind, TokenKind::Annotation);  // Ignore
    EXPECT_EQ(toks[8].kind, TokenKind::Separator);
    // space-joined form keeps the annotation classification
    auto joined = tokenize("@ Test void");
    EXPECT_EQ(joined[1].kind, TokenKind::Annotation);
    EXPECT_EQ(joined[2].kind, TokenKind::Keyword);
}

TEST(Lexer, ReservedMarkersOnlyWhenEnabled)
{
    const char* src = "TEST_METHOD: { <ASSERTION> } <SEP> FOCAL_METHOD: x";
    auto with = tokenize(src, {.reserved_markers = true});
    std::vector<std::string> expected = {"TEST_METHOD:", "{", "<ASSERTION>", "}", "<SEP>", "FOCAL_METHOD:", "x"};
    EXPECT_EQ(texts(with), expected);
    EXPECT_EQ(with[2].kind, TokenKind::Marker);
    auto without = tokenize("List<SEP> x", {});
    EXPECT_EQ(without.size(), 5u);
}

// Property: lexing the space-joined token texts reproduces the token texts.
TEST(Lexer, LexicalIdempotence)
{
    std::vector<std::string> sources = {
        "class A { int f(int[] a) { return a[a.length-1]>>2; } }",
        "x = y<<=3; z = a->b; List<List<String>> l = new ArrayList<>();",
        "assertEquals(\"a b\", s.trim()); char c = ' '; double d = 1.5e-3;",
        "@Test(expected = IOException.class) public void t() throws Exception { f(); }",
        "try { f(); fail(); } catch (IOException | RuntimeException e) { /* ok */ }",
    };
    std::mt19937 rng(7);
    const std::vector<std::string> atoms = {"a",  "Foo", "1",   "2.0", "\"s t\"", "'x'", "(", ")", "[",  "]",  "{",
                                            "}",  ";",   ",",   ".",   "+",       "-",   "++", "--", "<", ">",  ">>",
                                            "==", "!",   "&&",  "->",  "::",      "@",   "?", ":",  "if", "new"};
    for (int n = 0; n < 200; ++n) {
        std::string s;
        std::uniform_int_distribution<std::size_t> len(1, 40);
        std::uniform_int_distribution<std::size_t> pick(0, atoms.size() - 1);
        std::uniform_int_distribution<int> space(0, 1);
        for (std::size_t i = len(rng); i > 0; --i) {
            s += atoms[pick(rng)];
            if (space(rng)) {
                s += ' ';
            }
        }
        sources.push_back(s);
    }
    for (const auto& src : sources) {
        auto first = texts(tokenize(src));
        auto second = texts(tokenize(join(first)));
        EXPECT_EQ(first, second) << src;
    }
}
