#include "assertgen/java/method_parser.hpp"

#include "assertgen/error.hpp"
#include "assertgen/java/lexer.hpp"
#include "structure.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

namespace assertgen::java {

TokenList MethodUnit::tokens() const
{
    TokenList out = signature_tokens;
    out.insert(out.end(), body_tokens.begin(), body_tokens.end());
    return out;
}

std::string MethodUnit::qualified_id() const
{
    std::string id = package.empty() ? owner_class : package + "." + owner_class;
    id += "#" + name + "(";
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (i > 0) {
            id += ",";
        }
        id += params[i].type_name;
    }
    return id + ")";
}

bool MethodUnit::has_annotation(std::string_view name) const
{
    for (std::size_t i = 0; i + 1 < signature_tokens.size(); ++i) {
        if (signature_tokens[i].kind == TokenKind::Annotation && signature_tokens[i].text == "@") {
            // last segment of a possibly qualified name
            std::size_t j = i + 1;
            std::string last;
            while (j < signature_tokens.size() &&
                   (signature_tokens[j].kind == TokenKind::Annotation || signature_tokens[j].text == ".")) {
                if (signature_tokens[j].text != ".") {
                    last = signature_tokens[j].text;
                }
                ++j;
            }
            if (last == name) {
                return true;
            }
        }
    }
    return false;
}

std::vector<MethodUnit> CompilationUnit::all_methods() const
{
    std::vector<MethodUnit> out;
    for (const auto& c : classes) {
        out.insert(out.end(), c.methods.begin(), c.methods.end());
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const MethodUnit& a, const MethodUnit& b) { return a.source_span.first < b.source_span.first; });
    return out;
}

const ClassInfo* CompilationUnit::find_class(std::string_view name) const
{
    for (const auto& c : classes) {
        if (c.name == name) {
            return &c;
        }
    }
    return nullptr;
}

namespace {

using detail::angle_delta;
using detail::build_match_table;
using detail::closer_for;
using detail::is_close;
using detail::is_open;
using detail::npos;

bool is_class_keyword(const SourceToken& t)
{
    return (t.kind == TokenKind::Keyword && (t.text == "class" || t.text == "interface" || t.text == "enum")) ||
           (t.kind == TokenKind::Identifier && t.text == "record");
}

std::string concat_texts(std::span<const SourceToken> tokens)
{
    std::string out;
    for (const auto& t : tokens) {
        if (!out.empty() && t.kind == TokenKind::Identifier && out.back() != '<' && out.back() != '.' &&
            out.back() != '(' && out.back() != ',') {
            // keep qualifiers like `final` or primitive-then-name readable
            if (std::isalnum(static_cast<unsigned char>(out.back())) || out.back() == '_' || out.back() == '$') {
                out += ' ';
            }
        }
        out += t.text;
    }
    return out;
}

class Parser {
public:
    explicit Parser(std::string_view source) : source_(source)
    {
        try {
            auto lexed = lex(source);
            tokens_ = std::move(lexed.tokens);
            comments_ = std::move(lexed.comments);
        } catch (const Error& e) {
            throw Error(ErrorCode::ParseFailure, e.what());
        }
        if (!build_match_table(tokens_, match_)) {
            throw Error(ErrorCode::ParseFailure, "unbalanced delimiters");
        }
    }

    CompilationUnit run()
    {
        parse_members(0, tokens_.size(), npos, false);
        for (auto& c : unit_.classes) {
            c.package = unit_.package;
            for (auto& m : c.methods) {
                m.package = unit_.package;
            }
        }
        return std::move(unit_);
    }

private:
    const SourceToken& at(std::size_t i) const { return tokens_[i]; }

    // Skips `@Name(.Name)*` plus an optional argument list starting at i.
    std::size_t skip_annotation(std::size_t i, std::size_t end) const
    {
        ++i;
        while (i < end && (at(i).kind == TokenKind::Annotation || at(i).text == ".")) {
            ++i;
        }
        if (i < end && at(i).text == "(") {
            i = match_[i] + 1;
        }
        return i;
    }

    std::vector<std::size_t> core_indices(std::size_t begin, std::size_t end) const
    {
        std::vector<std::size_t> core;
        for (std::size_t i = begin; i < end;) {
            if (at(i).kind == TokenKind::Annotation && at(i).text == "@") {
                i = skip_annotation(i, end);
                continue;
            }
            core.push_back(i);
            ++i;
        }
        return core;
    }

    std::size_t find_class_keyword(std::size_t begin, std::size_t end) const
    {
        for (std::size_t i : core_indices(begin, end)) {
            if (at(i).text == "(" || at(i).text == "=") {
                return npos;
            }
            if (is_class_keyword(at(i)) && i + 1 < end && at(i + 1).kind == TokenKind::Identifier &&
                (i == begin || at(i - 1).text != ".")) {
                return i;
            }
        }
        return npos;
    }

    bool is_anonymous_open(std::size_t brace) const { return detail::is_anonymous_open(tokens_, match_, brace); }

    std::optional<std::string> doc_before(std::size_t first_token, std::size_t boundary_token) const
    {
        std::size_t lo = boundary_token == npos ? 0 : at(boundary_token).end_offset();
        std::size_t hi = at(first_token).offset;
        std::optional<std::string> doc;
        for (const auto& c : comments_) {
            if (c.is_doc && c.offset >= lo && c.offset < hi) {
                doc = c.text;
            }
        }
        return doc;
    }

    std::vector<Parameter> parse_params(std::size_t open, std::size_t close) const
    {
        std::vector<Parameter> params;
        std::vector<std::size_t> current;
        int angle = 0;
        auto flush = [&] {
            std::vector<std::size_t> kept;
            for (std::size_t k = 0; k < current.size();) {
                const auto& t = at(current[k]);
                if (t.kind == TokenKind::Annotation && t.text == "@") {
                    std::size_t after = skip_annotation(current[k], close);
                    while (k < current.size() && current[k] < after) {
                        ++k;
                    }
                    continue;
                }
                if (!(t.kind == TokenKind::Keyword && t.text == "final")) {
                    kept.push_back(current[k]);
                }
                ++k;
            }
            current.clear();
            if (kept.empty()) {
                return;
            }
            // `int a[]` style: name precedes the dims
            std::size_t name_pos = kept.size() - 1;
            while (name_pos > 0 && (at(kept[name_pos]).text == "]" || at(kept[name_pos]).text == "[")) {
                --name_pos;
            }
            Parameter p;
            p.name = at(kept[name_pos]).text;
            TokenList type_tokens;
            for (std::size_t k = 0; k < kept.size(); ++k) {
                if (k != name_pos) {
                    type_tokens.push_back(at(kept[k]));
                }
            }
            p.type_name = concat_texts(type_tokens);
            params.push_back(std::move(p));
        };
        for (std::size_t i = open + 1; i < close; ++i) {
            if (is_open(at(i))) {
                for (std::size_t k = i; k <= match_[i]; ++k) {
                    current.push_back(k);
                }
                i = match_[i];
                continue;
            }
            angle += angle_delta(at(i));
            if (angle == 0 && at(i).text == ",") {
                flush();
                continue;
            }
            current.push_back(i);
        }
        flush();
        return params;
    }

    // Returns true and records a method when [begin, brace) is a method or
    // constructor header.
    bool try_method(std::size_t begin, std::size_t brace, std::size_t owner)
    {
        if (owner == npos) {
            return false;
        }
        auto core = core_indices(begin, brace);
        std::size_t paren = npos;
        std::size_t paren_pos = 0;
        for (std::size_t k = 0; k < core.size(); ++k) {
            const auto& t = at(core[k]);
            if (t.text == "=" || t.text == "->") {
                return false;
            }
            if (t.text == "(") {
                paren = core[k];
                paren_pos = k;
                break;
            }
        }
        if (paren == npos || paren_pos == 0) {
            return false;
        }
        const auto& name_tok = at(core[paren_pos - 1]);
        if (name_tok.kind != TokenKind::Identifier) {
            return false;
        }
        if (paren_pos >= 2) {
            const auto& before = at(core[paren_pos - 2]);
            if (before.text == "new" || before.text == ".") {
                return false;
            }
        }
        std::size_t close = match_[paren];
        for (std::size_t i = close + 1; i < brace; ++i) {
            const auto& t = at(i);
            bool ok = t.kind == TokenKind::Identifier || t.text == "throws" || t.text == "." || t.text == "," ||
                      t.text == "[" || t.text == "]" || angle_delta(t) != 0 || t.kind == TokenKind::Annotation;
            if (!ok) {
                return false;
            }
        }

        MethodUnit m;
        m.name = name_tok.text;
        m.owner_class = unit_.classes[owner].name;
        m.is_constructor = m.name == m.owner_class;
        m.params = parse_params(paren, close);
        m.signature_tokens.assign(tokens_.begin() + static_cast<std::ptrdiff_t>(begin),
                                  tokens_.begin() + static_cast<std::ptrdiff_t>(brace));
        std::size_t body_end = match_[brace];
        m.body_tokens.assign(tokens_.begin() + static_cast<std::ptrdiff_t>(brace),
                             tokens_.begin() + static_cast<std::ptrdiff_t>(body_end + 1));
        m.doc_text = doc_before(begin, begin == 0 ? npos : begin - 1);
        m.source_span = {at(begin).offset, at(body_end).end_offset()};
        m.source_text = std::string(source_.substr(m.source_span.first, m.source_span.second - m.source_span.first));
        unit_.classes[owner].methods.push_back(std::move(m));
        return true;
    }

    void record_fields(std::size_t begin, std::size_t end, std::size_t owner)
    {
        if (owner == npos) {
            return;
        }
        auto core = core_indices(begin, end);
        if (core.empty()) {
            return;
        }
        // bodyless method declarations
        for (std::size_t k : core) {
            if (at(k).text == "=") {
                break;
            }
            if (at(k).text == "(") {
                return;
            }
        }
        int angle = 0;
        bool in_initializer = false;
        std::size_t last_ident = npos;
        auto take = [&] {
            if (last_ident != npos) {
                unit_.classes[owner].field_names.push_back(at(last_ident).text);
            }
            last_ident = npos;
        };
        for (std::size_t i = begin; i < end; ++i) {
            if (is_open(at(i))) {
                i = match_[i];
                continue;
            }
            angle += angle_delta(at(i));
            if (at(i).text == "=" && angle == 0) {
                if (!in_initializer) {
                    take();
                }
                in_initializer = true;
            } else if (at(i).text == "," && angle == 0) {
                if (!in_initializer) {
                    take();
                }
                in_initializer = false;
            } else if (!in_initializer && at(i).kind == TokenKind::Identifier) {
                last_ident = i;
            }
        }
        if (!in_initializer) {
            take();
        }
    }

    std::size_t new_class(std::size_t name_tok)
    {
        ClassInfo c;
        c.name = at(name_tok).text;
        unit_.classes.push_back(std::move(c));
        return unit_.classes.size() - 1;
    }

    // Finds anonymous and local classes inside statement code.
    void scan_body(std::size_t begin, std::size_t end, std::size_t owner)
    {
        std::size_t stmt_start = begin;
        for (std::size_t i = begin; i < end; ++i) {
            const auto& t = at(i);
            if (t.text == "{" && t.kind == TokenKind::Separator) {
                std::size_t close = match_[i];
                if (is_anonymous_open(i)) {
                    parse_members(i + 1, close, owner, false);
                    i = close;
                    continue;
                }
                std::size_t kw = find_class_keyword(stmt_start, i);
                if (kw != npos) {
                    std::size_t cls = new_class(kw + 1);
                    parse_members(i + 1, close, cls, at(kw).text == "enum");
                    i = close;
                    stmt_start = close + 1;
                    continue;
                }
                stmt_start = i + 1;
            } else if (t.text == ";" || t.text == "}") {
                stmt_start = i + 1;
            }
        }
    }

    void parse_members(std::size_t begin, std::size_t end, std::size_t owner, bool enum_constants)
    {
        std::size_t member_start = begin;
        for (std::size_t i = begin; i < end;) {
            const auto& t = at(i);
            if (t.kind == TokenKind::Separator && t.text == ";") {
                if (owner == npos && member_start < i && at(member_start).text == "package") {
                    std::string pkg;
                    for (std::size_t k = member_start + 1; k < i; ++k) {
                        pkg += at(k).text;
                    }
                    unit_.package = pkg;
                } else if (find_class_keyword(member_start, i) != npos) {
                    throw Error(ErrorCode::ParseFailure, "class declaration without body near offset " +
                                                             std::to_string(at(member_start).offset));
                } else if (!enum_constants) {
                    record_fields(member_start, i, owner);
                }
                enum_constants = false;
                member_start = ++i;
                continue;
            }
            if (t.kind == TokenKind::Separator && (t.text == "(" || t.text == "[")) {
                scan_body(i + 1, match_[i], owner);
                i = match_[i] + 1;
                continue;
            }
            if (t.kind == TokenKind::Separator && t.text == "{") {
                std::size_t close = match_[i];
                std::size_t kw = find_class_keyword(member_start, i);
                if (kw != npos) {
                    std::size_t cls = new_class(kw + 1);
                    parse_members(i + 1, close, cls, at(kw).text == "enum");
                    member_start = close + 1;
                } else if (enum_constants || is_anonymous_open(i)) {
                    if (owner != npos) {
                        parse_members(i + 1, close, owner, false);
                    }
                } else if (try_method(member_start, i, owner)) {
                    scan_body(i + 1, close, owner);
                    member_start = close + 1;
                } else {
                    if (owner != npos) {
                        scan_body(i + 1, close, owner);
                    }
                    bool initializer_expr = false;
                    for (std::size_t k = member_start; k < i; ++k) {
                        if (at(k).text == "=") {
                            initializer_expr = true;
                        }
                    }
                    if (!initializer_expr) {
                        member_start = close + 1;
                    }
                }
                i = close + 1;
                continue;
            }
            ++i;
        }
    }

    std::string_view source_;
    TokenList tokens_;
    std::vector<Comment> comments_;
    std::vector<std::size_t> match_;
    CompilationUnit unit_;
};

}  // namespace

bool delimiters_balanced(std::span<const SourceToken> tokens)
{
    std::vector<std::size_t> match;
    return build_match_table(tokens, match);
}

std::size_t matching_close(std::span<const SourceToken> tokens, std::size_t open)
{
    if (open >= tokens.size() || !is_open(tokens[open])) {
        return npos;
    }
    std::vector<char> stack;
    for (std::size_t i = open; i < tokens.size(); ++i) {
        if (is_open(tokens[i])) {
            stack.push_back(closer_for(tokens[i].text));
        } else if (is_close(tokens[i])) {
            if (stack.empty() || stack.back() != tokens[i].text[0]) {
                return npos;
            }
            stack.pop_back();
            if (stack.empty()) {
                return i;
            }
        }
    }
    return npos;
}

CompilationUnit parse_compilation_unit(std::string_view source) { return Parser(source).run(); }

std::vector<MethodUnit> parse_methods(std::string_view source) { return parse_compilation_unit(source).all_methods(); }

}  // namespace assertgen::java
