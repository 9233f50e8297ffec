#include "assertgen/java/assertions.hpp"

#include "assertgen/error.hpp"
#include "assertgen/java/lexer.hpp"
#include "structure.hpp"

#include <cctype>

namespace assertgen::java {

using detail::npos;

std::string_view assertion_kind_name(AssertionKind kind) noexcept
{
    switch (kind) {
    case AssertionKind::AssertEquals: return "assertEquals";
    case AssertionKind::AssertNotEquals: return "assertNotEquals";
    case AssertionKind::AssertTrue: return "assertTrue";
    case AssertionKind::AssertFalse: return "assertFalse";
    case AssertionKind::AssertNull: return "assertNull";
    case AssertionKind::AssertNotNull: return "assertNotNull";
    case AssertionKind::AssertThrows: return "assertThrows";
    case AssertionKind::TryCatchFail: return "try-catch+fail";
    }
    return "?";
}

std::optional<AssertionKind> assertion_kind_from_name(std::string_view name) noexcept
{
    for (auto k : kAllAssertionKinds) {
        if (assertion_kind_name(k) == name) {
            return k;
        }
    }
    return std::nullopt;
}

std::optional<AssertionKind> assertion_method_kind(std::string_view method_name) noexcept
{
    if (method_name == "try-catch+fail") {
        return std::nullopt;
    }
    return assertion_kind_from_name(method_name);
}

std::optional<int> expected_arity(AssertionKind kind) noexcept
{
    switch (kind) {
    case AssertionKind::AssertEquals:
    case AssertionKind::AssertNotEquals:
    case AssertionKind::AssertThrows: return 2;
    case AssertionKind::AssertTrue:
    case AssertionKind::AssertFalse:
    case AssertionKind::AssertNull:
    case AssertionKind::AssertNotNull: return 1;
    case AssertionKind::TryCatchFail: return std::nullopt;
    }
    return std::nullopt;
}

bool is_acceptable_assertion(const AssertionSite& site) noexcept
{
    auto arity = expected_arity(site.kind);
    return !arity || site.arg_count == *arity;
}

namespace {

bool is_assert_qualifier(std::string_view s) { return s == "Assert" || s == "Assertions"; }

bool starts_uppercase(const std::string& s)
{
    return !s.empty() && std::isupper(static_cast<unsigned char>(s[0]));
}

// Counts the comma-separated arguments between `open` and its partner.
int count_arguments(std::span<const SourceToken> tokens, const std::vector<std::size_t>& match, std::size_t open)
{
    std::size_t close = match[open];
    if (close == open + 1) {
        return 0;
    }
    int args = 1;
    int generic_depth = 0;
    for (std::size_t i = open + 1; i < close; ++i) {
        const auto& t = tokens[i];
        if (detail::is_open(t)) {
            i = match[i];
            continue;
        }
        if (t.text == "<" && i > open + 1) {
            const auto& prev = tokens[i - 1];
            if ((prev.kind == TokenKind::Identifier && starts_uppercase(prev.text)) || prev.text == ".") {
                ++generic_depth;
            }
        } else if (generic_depth > 0 && detail::angle_delta(t) < 0) {
            generic_depth = std::max(0, generic_depth + detail::angle_delta(t));
        } else if (generic_depth == 0 && t.text == ",") {
            ++args;
        }
    }
    return args;
}

// `fail(` as a bare or Assert-qualified call anywhere in [begin, end).
bool contains_fail_call(std::span<const SourceToken> tokens, std::size_t begin, std::size_t end)
{
    for (std::size_t i = begin; i + 1 < end; ++i) {
        if (tokens[i].kind != TokenKind::Identifier || tokens[i].text != "fail" || tokens[i + 1].text != "(") {
            continue;
        }
        if (i == 0 || tokens[i - 1].text != ".") {
            return true;
        }
        if (i >= 2 && is_assert_qualifier(tokens[i - 2].text)) {
            return true;
        }
    }
    return false;
}

struct TryStatement {
    std::size_t try_block_open = npos;
    std::size_t end = npos;  // exclusive
    int catch_count = 0;
};

// Structure of a try statement starting at `i`; end == npos when malformed.
TryStatement scan_try(std::span<const SourceToken> tokens, const std::vector<std::size_t>& match, std::size_t i,
                      std::size_t limit)
{
    TryStatement out;
    std::size_t j = i + 1;
    if (j < limit && tokens[j].text == "(") {
        j = match[j] + 1;
    }
    if (j >= limit || tokens[j].text != "{") {
        return out;
    }
    out.try_block_open = j;
    j = match[j] + 1;
    while (j + 1 < limit && tokens[j].text == "catch" && tokens[j + 1].text == "(") {
        std::size_t after = match[j + 1] + 1;
        if (after >= limit || tokens[after].text != "{") {
            return out;
        }
        ++out.catch_count;
        j = match[after] + 1;
    }
    if (j + 1 < limit && tokens[j].text == "finally" && tokens[j + 1].text == "{") {
        j = match[j + 1] + 1;
    }
    out.end = j;
    return out;
}

struct CallHead {
    AssertionKind kind;
    std::size_t open_paren;
};

// `name(` or `Q.Assert.name(` at position i.
std::optional<CallHead> assertion_call_at(std::span<const SourceToken> tokens, std::size_t i, std::size_t limit)
{
    std::size_t j = i;
    std::string last_qualifier;
    while (j + 2 < limit && tokens[j].kind == TokenKind::Identifier && tokens[j + 1].text == ".") {
        last_qualifier = tokens[j].text;
        j += 2;
    }
    if (j + 1 >= limit || tokens[j].kind != TokenKind::Identifier || tokens[j + 1].text != "(") {
        return std::nullopt;
    }
    if (j != i && !is_assert_qualifier(last_qualifier)) {
        return std::nullopt;
    }
    auto kind = assertion_method_kind(tokens[j].text);
    if (!kind) {
        return std::nullopt;
    }
    return CallHead{*kind, j + 1};
}

bool is_statement_start(std::span<const SourceToken> tokens, const std::vector<std::size_t>& match, std::size_t i,
                        std::size_t begin)
{
    if (i == begin) {
        return true;
    }
    const auto& prev = tokens[i - 1];
    if (prev.text == "{" || prev.text == "}" || prev.text == ";" || prev.text == "else" || prev.text == "do" ||
        prev.text == kAssertionPlaceholder) {
        return true;
    }
    if (prev.text == ")") {
        std::size_t open = match[i - 1];
        if (open != npos && open > 0) {
            const auto& kw = tokens[open - 1].text;
            return kw == "if" || kw == "for" || kw == "while";
        }
    }
    return false;
}

class SiteScanner {
public:
    explicit SiteScanner(std::span<const SourceToken> tokens) : tokens_(tokens)
    {
        if (!detail::build_match_table(tokens_, match_)) {
            throw Error(ErrorCode::ParseFailure, "unbalanced delimiters in method body");
        }
    }

    std::vector<AssertionSite> run()
    {
        scan(0, tokens_.size());
        return std::move(sites_);
    }

private:
    void scan(std::size_t begin, std::size_t end)
    {
        for (std::size_t i = begin; i < end;) {
            const auto& t = tokens_[i];
            if (t.text == "{" && t.kind == TokenKind::Separator) {
                bool lambda = i > 0 && tokens_[i - 1].text == "->";
                if (lambda || detail::is_anonymous_open(tokens_, match_, i)) {
                    i = match_[i] + 1;
                    continue;
                }
            }
            if (is_statement_start(tokens_, match_, i, begin)) {
                if (t.kind == TokenKind::Keyword && t.text == "try") {
                    auto stmt = scan_try(tokens_, match_, i, end);
                    if (stmt.end != npos && stmt.catch_count > 0 &&
                        contains_fail_call(tokens_, stmt.try_block_open, match_[stmt.try_block_open])) {
                        add_site(AssertionKind::TryCatchFail, i, stmt.end, 0, false);
                        i = stmt.end;
                        continue;
                    }
                } else if (auto head = assertion_call_at(tokens_, i, end)) {
                    std::size_t close = match_[head->open_paren];
                    if (close + 1 < end && tokens_[close + 1].text == ";") {
                        int args = count_arguments(tokens_, match_, head->open_paren);
                        auto arity = expected_arity(head->kind);
                        add_site(head->kind, i, close + 2, args, arity && args > *arity);
                        i = close + 2;
                        continue;
                    }
                }
            }
            ++i;
        }
    }

    void add_site(AssertionKind kind, std::size_t begin, std::size_t end, int args, bool message)
    {
        AssertionSite s;
        s.kind = kind;
        s.token_span = {begin, end};
        s.arg_count = args;
        s.has_message_param = message;
        s.byte_span = {tokens_[begin].offset, tokens_[end - 1].end_offset()};
        sites_.push_back(s);
    }

    std::span<const SourceToken> tokens_;
    std::vector<std::size_t> match_;
    std::vector<AssertionSite> sites_;
};

}  // namespace

std::vector<AssertionSite> find_assertions_in_block(std::span<const SourceToken> body)
{
    return SiteScanner(body).run();
}

std::vector<AssertionSite> find_assertions(const MethodUnit& method) { return find_assertions_in_block(method.body_tokens); }

MaskedMethod mask_assertion(const MethodUnit& method, const AssertionSite& site)
{
    const auto& body = method.body_tokens;
    if (site.token_span.begin >= site.token_span.end || site.token_span.end > body.size()) {
        throw Error(ErrorCode::SpanOutOfRange, "span [" + std::to_string(site.token_span.begin) + ", " +
                                                   std::to_string(site.token_span.end) + ") exceeds body of " +
                                                   std::to_string(body.size()) + " tokens");
    }
    auto first = body.begin() + static_cast<std::ptrdiff_t>(site.token_span.begin);
    auto last = body.begin() + static_cast<std::ptrdiff_t>(site.token_span.end);
    MaskedMethod out;
    out.truth_tokens.assign(first, last);
    out.masked_tokens.assign(body.begin(), first);
    out.masked_tokens.push_back(
        SourceToken{std::string(kAssertionPlaceholder), TokenKind::Marker, first->offset});
    out.masked_tokens.insert(out.masked_tokens.end(), last, body.end());
    return out;
}

std::optional<AssertionKind> assertion_type_of(std::span<const SourceToken> tokens)
{
    if (tokens.empty()) {
        return std::nullopt;
    }
    std::vector<std::size_t> match;
    if (!detail::build_match_table(tokens, match)) {
        // head detection only needs the call name; tolerate broken tails
        if (auto head = assertion_call_at(tokens, 0, tokens.size())) {
            return head->kind;
        }
        return std::nullopt;
    }
    if (tokens[0].text == "try") {
        auto stmt = scan_try(tokens, match, 0, tokens.size());
        if (stmt.end != npos && stmt.catch_count > 0 &&
            contains_fail_call(tokens, stmt.try_block_open, match[stmt.try_block_open])) {
            return AssertionKind::TryCatchFail;
        }
        return std::nullopt;
    }
    if (auto head = assertion_call_at(tokens, 0, tokens.size())) {
        return head->kind;
    }
    return std::nullopt;
}

std::optional<AssertionKind> assertion_type_of(std::string_view text)
{
    TokenList tokens;
    try {
        tokens = tokenize(text, {.reserved_markers = true});
    } catch (const Error&) {
        // an unterminated literal in the tail still leaves a recognizable head
        auto cut = text.find_first_of("\"'");
        if (cut == std::string_view::npos) {
            return std::nullopt;
        }
        try {
            tokens = tokenize(text.substr(0, cut), {.reserved_markers = true});
        } catch (const Error&) {
            return std::nullopt;
        }
    }
    return assertion_type_of(tokens);
}

}  // namespace assertgen::java
