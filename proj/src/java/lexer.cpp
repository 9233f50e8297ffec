#include "assertgen/java/lexer.hpp"

#include "assertgen/error.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace assertgen::java {

std::string_view token_kind_name(TokenKind kind) noexcept
{
    switch (kind) {
    case TokenKind::Identifier: return "Identifier";
    case TokenKind::Keyword: return "Keyword";
    case TokenKind::StringLit: return "StringLit";
    case TokenKind::CharLit: return "CharLit";
    case TokenKind::IntLit: return "IntLit";
    case TokenKind::FloatLit: return "FloatLit";
    case TokenKind::BoolLit: return "BoolLit";
    case TokenKind::NullLit: return "NullLit";
    case TokenKind::Operator: return "Operator";
    case TokenKind::Separator: return "Separator";
    case TokenKind::Annotation: return "Annotation";
    case TokenKind::Marker: return "Marker";
    }
    return "?";
}

bool is_reserved_marker(std::string_view text) noexcept
{
    return text == kAssertionPlaceholder || text == kSeparatorMarker || text == kTestMethodMarker ||
           text == kFocalMethodMarker;
}

std::vector<std::string> texts(std::span<const SourceToken> tokens)
{
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) {
        out.push_back(t.text);
    }
    return out;
}

std::string join(std::span<const std::string> parts)
{
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) {
            out += ' ';
        }
        out += p;
    }
    return out;
}

std::string join(std::span<const SourceToken> tokens)
{
    std::string out;
    for (const auto& t : tokens) {
        if (!out.empty()) {
            out += ' ';
        }
        out += t.text;
    }
    return out;
}

namespace {

// Java SE 17 reserved keywords plus the contextual ones that matter for
// statement structure. true/false/null are literals, handled separately.
constexpr std::array kKeywords = {
    "abstract", "assert",     "boolean",   "break",     "byte",      "case",     "catch",
    "char",     "class",      "const",     "continue",  "default",   "do",       "double",
    "else",     "enum",       "extends",   "final",     "finally",   "float",    "for",
    "goto",     "if",         "implements", "import",   "instanceof", "int",     "interface",
    "long",     "native",     "new",       "package",   "private",   "protected", "public",
    "return",   "short",      "static",    "strictfp",  "super",     "switch",   "synchronized",
    "this",     "throw",      "throws",    "transient", "try",       "void",     "volatile",
    "while",    "var",
};

constexpr std::array kOperators = {
    ">>>=", "<<=", ">>=", ">>>", "...", "->", "::", "++", "--", "&&", "||", "==", "!=", "<=",
    ">=",   "+=",  "-=",  "*=",  "/=",  "&=", "|=", "^=", "%=", "<<", ">>", "=",  ">",  "<",
    "!",    "~",   "?",   ":",   "+",   "-",  "*",  "/",  "&",  "|",  "^",  "%",
};

bool is_ident_start(char c) noexcept
{
    auto u = static_cast<unsigned char>(c);
    return std::isalpha(u) || c == '_' || c == '$' || u >= 0x80;
}

bool is_ident_part(char c) noexcept
{
    return is_ident_start(c) || std::isdigit(static_cast<unsigned char>(c));
}

bool is_digit(char c) noexcept { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

bool is_hex_digit(char c) noexcept { return std::isxdigit(static_cast<unsigned char>(c)) != 0; }

class Lexer {
public:
    Lexer(std::string_view src, LexOptions options) : src_(src), options_(options) {}

    LexResult run()
    {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
                continue;
            }
            if (c == '/' && peek(1) == '/') {
                line_comment();
                continue;
            }
            if (c == '/' && peek(1) == '*') {
                block_comment();
                continue;
            }
            if (c == '"') {
                string_literal();
            } else if (c == '\'') {
                char_literal();
            } else if (is_digit(c) || (c == '.' && is_digit(peek(1)))) {
                number();
            } else if (is_ident_start(c)) {
                word();
            } else if (c == '@') {
                emit(pos_, 1, TokenKind::Annotation);
                ++pos_;
                annotation_pending_ = true;
                continue;
            } else if (options_.reserved_markers && c == '<' && try_marker()) {
                // consumed
            } else {
                punctuation();
            }
            annotation_pending_ = false;
        }
        return std::move(result_);
    }

private:
    char peek(std::size_t ahead) const noexcept
    {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }

    void emit(std::size_t start, std::size_t len, TokenKind kind)
    {
        result_.tokens.push_back(SourceToken{std::string(src_.substr(start, len)), kind, start});
    }

    [[noreturn]] void unterminated(std::size_t start, std::string_view what) const
    {
        throw Error(ErrorCode::UnterminatedLiteral,
                    std::string(what) + " starting at offset " + std::to_string(start));
    }

    void line_comment()
    {
        std::size_t start = pos_;
        while (pos_ < src_.size() && src_[pos_] != '\n') {
            ++pos_;
        }
        result_.comments.push_back({std::string(src_.substr(start, pos_ - start)), start, false});
    }

    void block_comment()
    {
        std::size_t start = pos_;
        auto close = src_.find("*/", pos_ + 2);
        if (close == std::string_view::npos) {
            unterminated(start, "block comment");
        }
        pos_ = close + 2;
        std::string text(src_.substr(start, pos_ - start));
        bool doc = text.size() > 4 && text.compare(0, 3, "/**") == 0;
        result_.comments.push_back({std::move(text), start, doc});
    }

    void string_literal()
    {
        std::size_t start = pos_;
        if (src_.substr(pos_, 3) == "\"\"\"") {
            text_block();
            return;
        }
        ++pos_;
        while (true) {
            if (pos_ >= src_.size() || src_[pos_] == '\n') {
                unterminated(start, "string literal");
            }
            char c = src_[pos_];
            if (c == '\\') {
                pos_ += 2;
                continue;
            }
            ++pos_;
            if (c == '"') {
                break;
            }
        }
        emit(start, pos_ - start, TokenKind::StringLit);
    }

    void text_block()
    {
        std::size_t start = pos_;
        pos_ += 3;
        while (true) {
            if (pos_ >= src_.size()) {
                unterminated(start, "text block");
            }
            if (src_[pos_] == '\\') {
                pos_ += 2;
                continue;
            }
            if (src_.substr(pos_, 3) == "\"\"\"") {
                pos_ += 3;
                break;
            }
            ++pos_;
        }
        emit(start, std::min(pos_, src_.size()) - start, TokenKind::StringLit);
    }

    void char_literal()
    {
        std::size_t start = pos_;
        ++pos_;
        while (true) {
            if (pos_ >= src_.size() || src_[pos_] == '\n') {
                unterminated(start, "char literal");
            }
            char c = src_[pos_];
            if (c == '\\') {
                pos_ += 2;
                continue;
            }
            ++pos_;
            if (c == '\'') {
                break;
            }
        }
        emit(start, pos_ - start, TokenKind::CharLit);
    }

    void digits(bool hex)
    {
        while (pos_ < src_.size() && (src_[pos_] == '_' || (hex ? is_hex_digit(src_[pos_]) : is_digit(src_[pos_])))) {
            ++pos_;
        }
    }

    void exponent(char marker_lower)
    {
        char c = peek(0);
        if (std::tolower(static_cast<unsigned char>(c)) == marker_lower) {
            std::size_t save = pos_;
            ++pos_;
            if (peek(0) == '+' || peek(0) == '-') {
                ++pos_;
            }
            if (!is_digit(peek(0))) {
                pos_ = save;
                return;
            }
            digits(false);
            is_float_ = true;
        }
    }

    void number()
    {
        std::size_t start = pos_;
        is_float_ = false;
        if (src_[pos_] == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
            pos_ += 2;
            digits(true);
            if (peek(0) == '.') {
                ++pos_;
                digits(true);
                is_float_ = true;
            }
            exponent('p');
        } else if (src_[pos_] == '0' && (peek(1) == 'b' || peek(1) == 'B')) {
            pos_ += 2;
            digits(false);
        } else {
            digits(false);
            if (peek(0) == '.' && (is_digit(peek(1)) || (!is_ident_start(peek(1)) && peek(1) != '.'))) {
                ++pos_;
                digits(false);
                is_float_ = true;
            }
            exponent('e');
        }
        char suffix = peek(0);
        if (suffix == 'l' || suffix == 'L') {
            ++pos_;
        } else if (suffix == 'f' || suffix == 'F' || suffix == 'd' || suffix == 'D') {
            ++pos_;
            is_float_ = true;
        }
        emit(start, pos_ - start, is_float_ ? TokenKind::FloatLit : TokenKind::IntLit);
    }

    void word()
    {
        std::size_t start = pos_;
        while (pos_ < src_.size() && is_ident_part(src_[pos_])) {
            ++pos_;
        }
        std::string_view w = src_.substr(start, pos_ - start);
        if (options_.reserved_markers && (w == "TEST_METHOD" || w == "FOCAL_METHOD") && peek(0) == ':' &&
            peek(1) != ':') {
            ++pos_;
            emit(start, pos_ - start, TokenKind::Marker);
            return;
        }
        TokenKind kind = TokenKind::Identifier;
        if (w == "true" || w == "false") {
            kind = TokenKind::BoolLit;
        } else if (w == "null") {
            kind = TokenKind::NullLit;
        } else if (is_java_keyword(w)) {
            kind = TokenKind::Keyword;
        } else if (annotation_pending_ || annotation_chain()) {
            kind = TokenKind::Annotation;
        }
        emit(start, pos_ - start, kind);
    }

    // True when the identifier continues a qualified annotation name, e.g.
    // the `Test` in `@org.junit.Test`.
    bool annotation_chain() const
    {
        const auto& toks = result_.tokens;
        return toks.size() >= 2 && toks.back().text == "." && toks[toks.size() - 2].kind == TokenKind::Annotation &&
               toks[toks.size() - 2].text != "@";
    }

    bool try_marker()
    {
        for (std::string_view m : {kAssertionPlaceholder, kSeparatorMarker}) {
            if (src_.substr(pos_, m.size()) == m) {
                emit(pos_, m.size(), TokenKind::Marker);
                pos_ += m.size();
                return true;
            }
        }
        return false;
    }

    void punctuation()
    {
        char c = src_[pos_];
        if (std::string_view("(){}[];,").find(c) != std::string_view::npos) {
            emit(pos_, 1, TokenKind::Separator);
            ++pos_;
            return;
        }
        if (src_.substr(pos_, 3) == "...") {
            emit(pos_, 3, TokenKind::Separator);
            pos_ += 3;
            return;
        }
        if (src_.substr(pos_, 2) == "::") {
            emit(pos_, 2, TokenKind::Separator);
            pos_ += 2;
            return;
        }
        if (c == '.') {
            emit(pos_, 1, TokenKind::Separator);
            ++pos_;
            return;
        }
        for (std::string_view op : kOperators) {
            if (src_.substr(pos_, op.size()) == op) {
                emit(pos_, op.size(), TokenKind::Operator);
                pos_ += op.size();
                return;
            }
        }
        // Not Java; keep it as a one-byte operator so arbitrary text still lexes.
        emit(pos_, 1, TokenKind::Operator);
        ++pos_;
    }

    std::string_view src_;
    LexOptions options_;
    std::size_t pos_ = 0;
    bool is_float_ = false;
    bool annotation_pending_ = false;
    LexResult result_;
};

}  // namespace

bool is_java_keyword(std::string_view word) noexcept
{
    return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

LexResult lex(std::string_view source, LexOptions options) { return Lexer(source, options).run(); }

TokenList tokenize(std::string_view source, LexOptions options) { return lex(source, options).tokens; }

}  // namespace assertgen::java
