#include "assertgen/error.hpp"
#include "assertgen/java/assertions.hpp"
#include "assertgen/java/lexer.hpp"
#include "structure.hpp"

#include <array>
#include <cctype>

namespace assertgen::java {

namespace {

struct SyntaxError {};

constexpr std::array kPrimitiveTypes = {"boolean", "byte", "char", "short", "int", "long", "float", "double", "void"};

constexpr std::array kBinaryOperators = {"||", "&&", "|", "^", "&", "==", "!=", "<", ">", "<=", ">=",
                                         "<<", ">>", ">>>", "+", "-", "*", "/", "%"};

constexpr std::array kAssignOperators = {"=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=", ">>>="};

template <std::size_t N>
bool one_of(const std::string& s, const std::array<const char*, N>& set)
{
    for (const char* x : set) {
        if (s == x) {
            return true;
        }
    }
    return false;
}

bool is_literal(TokenKind k)
{
    return k == TokenKind::StringLit || k == TokenKind::CharLit || k == TokenKind::IntLit ||
           k == TokenKind::FloatLit || k == TokenKind::BoolLit || k == TokenKind::NullLit;
}

enum class ExprShape { Other, Call };

/// Recursive-descent recognizer for Java expressions, enough to judge
/// whether a generated assertion statement is well formed.
class ExpressionParser {
public:
    ExpressionParser(std::span<const SourceToken> tokens, const std::vector<std::size_t>& match)
        : t_(tokens), match_(match)
    {
    }

    std::size_t pos() const { return pos_; }
    bool at_end() const { return pos_ >= t_.size(); }
    const std::string& text(std::size_t ahead = 0) const
    {
        static const std::string empty;
        return pos_ + ahead < t_.size() ? t_[pos_ + ahead].text : empty;
    }
    TokenKind kind(std::size_t ahead = 0) const
    {
        return pos_ + ahead < t_.size() ? t_[pos_ + ahead].kind : TokenKind::Marker;
    }

    void expect(std::string_view s)
    {
        if (text() != s) {
            throw SyntaxError{};
        }
        ++pos_;
    }

    bool accept(std::string_view s)
    {
        if (!at_end() && text() == s) {
            ++pos_;
            return true;
        }
        return false;
    }

    ExprShape expression()
    {
        if (lambda_ahead()) {
            lambda();
            return ExprShape::Other;
        }
        ExprShape shape = ternary();
        if (!at_end() && kind() == TokenKind::Operator && one_of(text(), kAssignOperators)) {
            ++pos_;
            expression();
            return ExprShape::Other;
        }
        return shape;
    }

    void block()
    {
        if (text() != "{") {
            throw SyntaxError{};
        }
        pos_ = match_[pos_] + 1;
    }

    void type()
    {
        if (kind() == TokenKind::Keyword && one_of(text(), kPrimitiveTypes)) {
            ++pos_;
        } else {
            qualified_type_name();
        }
        while (text() == "[" && text(1) == "]") {
            pos_ += 2;
        }
    }

private:
    void identifier()
    {
        if (kind() != TokenKind::Identifier) {
            throw SyntaxError{};
        }
        ++pos_;
    }

    void qualified_type_name()
    {
        identifier();
        type_arguments_opt();
        while (text() == "." && kind(1) == TokenKind::Identifier) {
            pos_ += 1;
            identifier();
            type_arguments_opt();
        }
    }

    // Consumes a closing angle bracket, splitting `>>`/`>>>` as needed.
    void close_angle()
    {
        if (pending_close_ > 0) {
            --pending_close_;
            if (pending_close_ == 0) {
                ++pos_;
            }
            return;
        }
        if (text() == ">") {
            ++pos_;
        } else if (text() == ">>") {
            pending_close_ = 1;
        } else if (text() == ">>>") {
            pending_close_ = 2;
        } else {
            throw SyntaxError{};
        }
    }

    void type_arguments_opt()
    {
        if (text() != "<") {
            return;
        }
        ++pos_;
        if (pending_close_ == 0 && text() == ">") {  // diamond
            ++pos_;
            return;
        }
        while (true) {
            if (accept("?")) {
                if (accept("extends") || accept("super")) {
                    type();
                }
            } else {
                type();
            }
            if (pending_close_ > 0 || text() != ",") {
                break;
            }
            ++pos_;
        }
        close_angle();
    }

    bool lambda_ahead() const
    {
        if (kind() == TokenKind::Identifier && text(1) == "->") {
            return true;
        }
        if (text() == "(" && match_[pos_] != detail::npos) {
            std::size_t after = match_[pos_] + 1;
            return after < t_.size() && t_[after].text == "->";
        }
        return false;
    }

    void lambda()
    {
        if (text() == "(") {
            pos_ = match_[pos_] + 1;
        } else {
            ++pos_;
        }
        expect("->");
        if (text() == "{") {
            block();
        } else {
            expression();
        }
    }

    ExprShape ternary()
    {
        ExprShape shape = binary();
        if (accept("?")) {
            expression();
            expect(":");
            if (lambda_ahead()) {
                lambda();
            } else {
                ternary();
            }
            return ExprShape::Other;
        }
        return shape;
    }

    ExprShape binary()
    {
        ExprShape shape = unary();
        while (!at_end()) {
            if (kind() == TokenKind::Operator && one_of(text(), kBinaryOperators)) {
                ++pos_;
                unary();
                shape = ExprShape::Other;
            } else if (text() == "instanceof") {
                ++pos_;
                accept("final");
                type();
                if (kind() == TokenKind::Identifier) {  // pattern binding
                    ++pos_;
                }
                shape = ExprShape::Other;
            } else {
                break;
            }
        }
        return shape;
    }

    ExprShape unary()
    {
        if (text() == "+" || text() == "-" || text() == "++" || text() == "--" || text() == "!" || text() == "~") {
            ++pos_;
            unary();
            return ExprShape::Other;
        }
        if (text() == "(" && cast_ahead()) {
            pos_ = match_[pos_] + 1;
            if (lambda_ahead()) {
                lambda();
            } else {
                unary();
            }
            return ExprShape::Other;
        }
        return postfix();
    }

    // `(Type) operand`: the parenthesized tokens form exactly one type and an
    // operand follows.
    bool cast_ahead()
    {
        std::size_t close = match_[pos_];
        if (close == detail::npos || close + 1 >= t_.size()) {
            return false;
        }
        std::size_t save = pos_;
        bool is_type = false;
        bool primitive = kind(1) == TokenKind::Keyword && one_of(text(1), kPrimitiveTypes);
        try {
            ++pos_;
            type();
            while (accept("&")) {
                type();
            }
            is_type = pos_ == close && pending_close_ == 0;
        } catch (const SyntaxError&) {
            is_type = false;
        }
        pos_ = save;
        pending_close_ = 0;
        if (!is_type) {
            return false;
        }
        const auto& next = t_[close + 1];
        if (primitive) {
            return next.kind != TokenKind::Operator || next.text == "+" || next.text == "-" || next.text == "~" ||
                   next.text == "!" || next.text == "++" || next.text == "--";
        }
        return is_literal(next.kind) || next.kind == TokenKind::Identifier || next.text == "(" ||
               next.text == "this" || next.text == "super" || next.text == "new" || next.text == "!" ||
               next.text == "~";
    }

    void arguments()
    {
        expect("(");
        if (accept(")")) {
            return;
        }
        while (true) {
            expression();
            if (accept(")")) {
                return;
            }
            expect(",");
        }
    }

    void array_initializer()
    {
        expect("{");
        if (accept("}")) {
            return;
        }
        while (true) {
            if (text() == "{") {
                array_initializer();
            } else {
                expression();
            }
            if (accept("}")) {
                return;
            }
            expect(",");
            if (accept("}")) {
                return;
            }
        }
    }

    void creator()
    {
        type_arguments_opt();
        if (kind() == TokenKind::Keyword && one_of(text(), kPrimitiveTypes)) {
            ++pos_;
        } else {
            qualified_type_name();
        }
        if (text() == "[") {
            bool sized = false;
            while (accept("[")) {
                if (accept("]")) {
                    continue;
                }
                expression();
                expect("]");
                sized = true;
            }
            if (!sized) {
                array_initializer();
            }
            return;
        }
        arguments();
        if (text() == "{") {
            block();  // anonymous class body
        }
    }

    ExprShape primary()
    {
        if (at_end()) {
            throw SyntaxError{};
        }
        const auto& tok = t_[pos_];
        if (is_literal(tok.kind)) {
            ++pos_;
            return ExprShape::Other;
        }
        if (tok.text == "(") {
            ++pos_;
            expression();
            expect(")");
            return ExprShape::Other;
        }
        if (tok.text == "new") {
            ++pos_;
            creator();
            return ExprShape::Other;
        }
        if (tok.text == "this" || tok.text == "super") {
            ++pos_;
            if (text() == "(") {
                arguments();
                return ExprShape::Call;
            }
            return ExprShape::Other;
        }
        if (tok.kind == TokenKind::Keyword && one_of(tok.text, kPrimitiveTypes)) {
            // int.class, int[].class
            type();
            expect(".");
            expect("class");
            return ExprShape::Other;
        }
        if (tok.kind == TokenKind::Identifier) {
            ++pos_;
            if (text() == "(") {
                arguments();
                return ExprShape::Call;
            }
            // String[].class
            if (text() == "[" && text(1) == "]") {
                while (text() == "[" && text(1) == "]") {
                    pos_ += 2;
                }
                expect(".");
                expect("class");
            }
            return ExprShape::Other;
        }
        throw SyntaxError{};
    }

    ExprShape postfix()
    {
        ExprShape shape = primary();
        while (!at_end()) {
            if (text() == ".") {
                ++pos_;
                if (accept("class") || accept("this")) {
                    shape = ExprShape::Other;
                    continue;
                }
                if (text() == "new") {
                    ++pos_;
                    creator();
                    shape = ExprShape::Other;
                    continue;
                }
                type_arguments_opt();
                if (kind() != TokenKind::Identifier && text() != "super") {
                    throw SyntaxError{};
                }
                ++pos_;
                if (text() == "(") {
                    arguments();
                    shape = ExprShape::Call;
                } else {
                    shape = ExprShape::Other;
                }
            } else if (text() == "[") {
                ++pos_;
                expression();
                expect("]");
                shape = ExprShape::Other;
            } else if (text() == "::") {
                ++pos_;
                if (!accept("new")) {
                    identifier();
                }
                shape = ExprShape::Other;
            } else if (text() == "++" || text() == "--") {
                ++pos_;
                shape = ExprShape::Other;
            } else {
                break;
            }
        }
        return shape;
    }

    std::span<const SourceToken> t_;
    const std::vector<std::size_t>& match_;
    std::size_t pos_ = 0;
    int pending_close_ = 0;
};

bool check_try_statement(std::span<const SourceToken> tokens, const std::vector<std::size_t>& match)
{
    std::size_t j = 1;
    if (j < tokens.size() && tokens[j].text == "(") {
        if (match[j] == j + 1) {
            return false;  // empty resource list
        }
        j = match[j] + 1;
    }
    if (j >= tokens.size() || tokens[j].text != "{") {
        return false;
    }
    j = match[j] + 1;
    int clauses = 0;
    while (j + 1 < tokens.size() && tokens[j].text == "catch" && tokens[j + 1].text == "(") {
        std::size_t open = j + 1;
        std::size_t close = match[open];
        // catch parameter: [final] Type (| Type)* name
        std::size_t k = open + 1;
        if (k < close && tokens[k].text == "final") {
            ++k;
        }
        if (close - k < 2 || tokens[close - 1].kind != TokenKind::Identifier) {
            return false;
        }
        for (std::size_t q = k; q < close - 1; ++q) {
            const auto& tk = tokens[q];
            if (!(tk.kind == TokenKind::Identifier || tk.text == "." || tk.text == "|")) {
                return false;
            }
        }
        j = close + 1;
        if (j >= tokens.size() || tokens[j].text != "{") {
            return false;
        }
        j = match[j] + 1;
        ++clauses;
    }
    if (j + 1 < tokens.size() && tokens[j].text == "finally" && tokens[j + 1].text == "{") {
        j = match[j + 1] + 1;
        ++clauses;
    }
    return clauses > 0 && j == tokens.size();
}

}  // namespace

bool check_syntax(std::string_view assertion_text)
{
    TokenList tokens;
    try {
        tokens = tokenize(assertion_text, {.reserved_markers = true});
    } catch (const Error&) {
        return false;
    }
    if (tokens.empty()) {
        return false;
    }
    for (const auto& t : tokens) {
        if (t.kind == TokenKind::Marker) {
            return false;
        }
    }
    std::vector<std::size_t> match;
    if (!detail::build_match_table(tokens, match)) {
        return false;
    }
    if (tokens[0].kind == TokenKind::Keyword && tokens[0].text == "try") {
        return check_try_statement(tokens, match);
    }
    try {
        ExpressionParser parser(tokens, match);
        ExprShape shape = parser.expression();
        parser.accept(";");
        return shape == ExprShape::Call && parser.at_end();
    } catch (const SyntaxError&) {
        return false;
    }
}

}  // namespace assertgen::java
