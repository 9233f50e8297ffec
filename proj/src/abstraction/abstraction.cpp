#include "assertgen/abstraction/abstraction.hpp"

#include "assertgen/error.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <set>

namespace assertgen::abstraction {

using java::SourceToken;
using java::TokenKind;

namespace {

constexpr std::array<std::pair<Category, std::string_view>, 9> kPrefixes = {{
    {Category::Ident, "IDENT"},
    {Category::Method, "METHOD"},
    {Category::String, "STRING"},
    {Category::Char, "CHAR"},
    {Category::Int, "INT"},
    {Category::Float, "FLOAT"},
    {Category::Bool, "BOOL"},
    {Category::Assert, "ASSERT"},
    {Category::Type, "TYPE"},
}};

constexpr std::array<std::string_view, 7> kAssertionMethods = {
    "assertEquals", "assertNotEquals", "assertTrue", "assertFalse", "assertNull", "assertNotNull", "assertThrows",
};

std::string make_token(Category c, std::size_t index)
{
    return std::string(category_prefix(c)) + "_" + std::to_string(index);
}

// Capitalized with at least one lowercase letter: `String`, `HashMap`, but
// not `MAX_VALUE`.
bool looks_like_type(const std::string& s)
{
    if (s.empty() || !std::isupper(static_cast<unsigned char>(s[0]))) {
        return false;
    }
    return std::any_of(s.begin(), s.end(), [](unsigned char c) { return std::islower(c); });
}

std::optional<Category> categorize(std::span<const SourceToken> tokens, std::size_t i,
                                   const std::set<std::string, std::less<>>& user_types)
{
    const auto& t = tokens[i];
    if (java::is_reserved_marker(t.text)) {
        return std::nullopt;
    }
    switch (t.kind) {
    case TokenKind::StringLit: return Category::String;
    case TokenKind::CharLit: return Category::Char;
    case TokenKind::IntLit: return Category::Int;
    case TokenKind::FloatLit: return Category::Float;
    case TokenKind::BoolLit: return Category::Bool;
    case TokenKind::Identifier: break;
    default: return std::nullopt;
    }
    bool call = i + 1 < tokens.size() && tokens[i + 1].text == "(";
    // `s.length` is METHOD as in a member access; `this.count` stays a field
    bool member = i > 0 && tokens[i - 1].text == "." && !(i > 1 && tokens[i - 2].text == "this");
    if (call && std::find(kAssertionMethods.begin(), kAssertionMethods.end(), t.text) != kAssertionMethods.end()) {
        return Category::Assert;
    }
    if (user_types.contains(t.text)) {
        return Category::Type;
    }
    if (looks_like_type(t.text)) {
        return std::nullopt;  // library type
    }
    if (call || member) {
        return Category::Method;
    }
    return Category::Ident;
}

void abstract_into(std::span<const SourceToken> tokens, AbstractionDictionary& dict,
                   const std::set<std::string, std::less<>>& user_types, std::vector<std::string>* out)
{
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        auto cat = categorize(tokens, i, user_types);
        if (cat) {
            auto tok = dict.intern(*cat, tokens[i].text);
            if (out) {
                out->push_back(std::move(tok));
            }
        } else if (out) {
            out->push_back(tokens[i].text);
        }
    }
}

std::size_t count_placeholders(std::span<const std::string> tokens)
{
    return static_cast<std::size_t>(std::count(tokens.begin(), tokens.end(), java::kAssertionPlaceholder));
}

}  // namespace

std::string_view category_prefix(Category c) noexcept
{
    for (const auto& [cat, prefix] : kPrefixes) {
        if (cat == c) {
            return prefix;
        }
    }
    return "?";
}

std::optional<std::pair<Category, std::size_t>> parse_abstract_token(std::string_view token) noexcept
{
    auto us = token.rfind('_');
    if (us == std::string_view::npos || us + 1 == token.size()) {
        return std::nullopt;
    }
    auto prefix = token.substr(0, us);
    auto digits = token.substr(us + 1);
    if (digits.size() > 1 && digits[0] == '0') {
        return std::nullopt;
    }
    std::size_t index = 0;
    auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), index);
    if (ec != std::errc{} || end != digits.data() + digits.size()) {
        return std::nullopt;
    }
    for (const auto& [cat, p] : kPrefixes) {
        if (p == prefix) {
            return std::pair{cat, index};
        }
    }
    return std::nullopt;
}

AbstractionDictionary AbstractionDictionary::from_entries(std::span<const Entry> entries)
{
    AbstractionDictionary dict;
    for (const auto& [abs, lexeme] : entries) {
        auto parsed = parse_abstract_token(abs);
        if (!parsed) {
            throw Error(ErrorCode::MalformedRecord, "dictionary key is not an abstract token: " + abs);
        }
        auto [cat, index] = *parsed;
        if (dict.by_abstract_.contains(abs)) {
            throw Error(ErrorCode::MalformedRecord, "duplicate dictionary key " + abs);
        }
        if (dict.by_lexeme_.contains({cat, lexeme})) {
            throw Error(ErrorCode::MalformedRecord, "lexeme bound twice in dictionary: " + lexeme);
        }
        if (index != dict.next_index_[cat]) {
            throw Error(ErrorCode::MalformedRecord, "dictionary indices are not dense at " + abs);
        }
        dict.intern(cat, lexeme);
    }
    return dict;
}

std::string AbstractionDictionary::intern(Category category, const std::string& lexeme)
{
    auto key = std::pair{category, lexeme};
    if (auto it = by_lexeme_.find(key); it != by_lexeme_.end()) {
        return entries_[it->second].first;
    }
    auto tok = make_token(category, next_index_[category]++);
    by_lexeme_.emplace(std::move(key), entries_.size());
    by_abstract_.emplace(tok, entries_.size());
    entries_.emplace_back(tok, lexeme);
    return tok;
}

std::optional<std::string> AbstractionDictionary::find(Category category, const std::string& lexeme) const
{
    if (auto it = by_lexeme_.find({category, lexeme}); it != by_lexeme_.end()) {
        return entries_[it->second].first;
    }
    return std::nullopt;
}

std::optional<std::string> AbstractionDictionary::concrete(std::string_view abstract_token) const
{
    if (auto it = by_abstract_.find(abstract_token); it != by_abstract_.end()) {
        return entries_[it->second].second;
    }
    return std::nullopt;
}

std::vector<std::string> AbstractionDictionary::lexemes(Category category) const
{
    std::vector<std::string> out;
    for (const auto& [abs, lexeme] : entries_) {
        if (parse_abstract_token(abs)->first == category) {
            out.push_back(lexeme);
        }
    }
    return out;
}

void AbstractionConfig::validate() const
{
    if (max_input_tokens < 2) {
        throw Error(ErrorCode::InvalidArgument, "max_input_tokens must be at least 2");
    }
    if (max_output_tokens < 1) {
        throw Error(ErrorCode::InvalidArgument, "max_output_tokens must be positive");
    }
}

AbstractResult abstract(std::span<const SourceToken> test_tokens,
                        std::optional<std::span<const SourceToken>> focal_tokens, const ClassContext* class_context,
                        const AbstractionConfig& config)
{
    auto placeholders = std::count_if(test_tokens.begin(), test_tokens.end(),
                                      [](const SourceToken& t) { return t.text == java::kAssertionPlaceholder; });
    if (placeholders != 1) {
        throw Error(ErrorCode::MissingPlaceholder,
                    "test method holds " + std::to_string(placeholders) + " placeholders, expected 1");
    }
    std::set<std::string, std::less<>> user_types;
    const ClassContext* ctx = config.include_class_context ? class_context : nullptr;
    if (ctx) {
        user_types.insert(ctx->type_names.begin(), ctx->type_names.end());
    }

    AbstractResult out;
    std::vector<std::string> focal_out;
    if (focal_tokens) {
        abstract_into(*focal_tokens, out.dictionary, user_types, &focal_out);
    }
    out.tokens.emplace_back(java::kTestMethodMarker);
    abstract_into(test_tokens, out.dictionary, user_types, &out.tokens);
    if (focal_tokens) {
        out.tokens.emplace_back(java::kFocalMethodMarker);
        out.tokens.insert(out.tokens.end(), focal_out.begin(), focal_out.end());
    }
    if (ctx) {
        for (const auto& f : ctx->field_names) {
            out.dictionary.intern(Category::Ident, f);
        }
        for (const auto& m : ctx->method_names) {
            out.dictionary.intern(Category::Method, m);
        }
        for (const auto& t : ctx->type_names) {
            out.dictionary.intern(Category::Type, t);
        }
    }
    return out;
}

std::vector<std::string> abstract_truth(std::span<const SourceToken> truth_tokens, AbstractionDictionary& dictionary)
{
    auto types = dictionary.lexemes(Category::Type);
    std::set<std::string, std::less<>> user_types(types.begin(), types.end());
    std::vector<std::string> out;
    abstract_into(truth_tokens, dictionary, user_types, &out);
    return out;
}

std::vector<std::string> deabstract(std::span<const std::string> abstract_tokens,
                                    const AbstractionDictionary& dictionary)
{
    std::vector<std::string> out;
    std::vector<std::string> unknown;
    out.reserve(abstract_tokens.size());
    for (const auto& tok : abstract_tokens) {
        if (!parse_abstract_token(tok)) {
            out.push_back(tok);
        } else if (auto lexeme = dictionary.concrete(tok)) {
            out.push_back(*lexeme);
        } else if (std::find(unknown.begin(), unknown.end(), tok) == unknown.end()) {
            unknown.push_back(tok);
        }
    }
    if (!unknown.empty()) {
        throw UnknownAbstractTokenError(std::move(unknown));
    }
    return out;
}

std::vector<std::string> truncate_input(std::span<const std::string> tokens, const AbstractionConfig& config)
{
    config.validate();
    if (auto n = count_placeholders(tokens); n != 1) {
        throw Error(ErrorCode::MissingPlaceholder, "input holds " + std::to_string(n) + " placeholders, expected 1");
    }
    auto limit = static_cast<std::size_t>(config.max_input_tokens);
    if (tokens.size() <= limit) {
        return {tokens.begin(), tokens.end()};
    }
    auto pos = static_cast<std::size_t>(
        std::find(tokens.begin(), tokens.end(), java::kAssertionPlaceholder) - tokens.begin());
    if (pos < limit) {
        return {tokens.begin(), tokens.begin() + static_cast<std::ptrdiff_t>(limit)};
    }
    std::vector<std::string> out(tokens.begin(), tokens.begin() + static_cast<std::ptrdiff_t>(limit - 1));
    out.emplace_back(java::kAssertionPlaceholder);
    return out;
}

bool fits_output_budget(std::span<const std::string> truth_tokens, const AbstractionConfig& config) noexcept
{
    return truth_tokens.size() <= static_cast<std::size_t>(std::max(config.max_output_tokens, 0));
}

}  // namespace assertgen::abstraction
