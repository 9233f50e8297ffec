#pragma once

#include "assertgen/java/method_parser.hpp"
#include "assertgen/java/token.hpp"

#include <array>
#include <optional>
#include <string_view>
#include <vector>

namespace assertgen::java {

/// The eight supported assertion forms.
enum class AssertionKind {
    AssertEquals,
    AssertNotEquals,
    AssertTrue,
    AssertFalse,
    AssertNull,
    AssertNotNull,
    AssertThrows,
    TryCatchFail,
};

inline constexpr std::array kAllAssertionKinds = {
    AssertionKind::AssertEquals, AssertionKind::AssertNotEquals, AssertionKind::AssertTrue,
    AssertionKind::AssertFalse,  AssertionKind::AssertNull,      AssertionKind::AssertNotNull,
    AssertionKind::AssertThrows, AssertionKind::TryCatchFail,
};

/// `assertEquals`, ..., and `try-catch+fail` for the idiom.
std::string_view assertion_kind_name(AssertionKind kind) noexcept;
std::optional<AssertionKind> assertion_kind_from_name(std::string_view name) noexcept;

/// Kind for one of the seven JUnit assertion method names.
std::optional<AssertionKind> assertion_method_kind(std::string_view method_name) noexcept;

/// Number of arguments of the message-free overload; nullopt for TryCatchFail.
std::optional<int> expected_arity(AssertionKind kind) noexcept;

struct TokenSpan {
    std::size_t begin = 0;
    std::size_t end = 0;  // exclusive

    std::size_t size() const noexcept { return end - begin; }
    friend bool operator==(const TokenSpan&, const TokenSpan&) = default;
};

struct AssertionSite {
    AssertionKind kind = AssertionKind::AssertEquals;
    TokenSpan token_span;  // within the enclosing method's body_tokens
    int arg_count = 0;
    bool has_message_param = false;
    std::pair<std::size_t, std::size_t> byte_span{0, 0};  // [start, end) in the origin source

    friend bool operator==(const AssertionSite&, const AssertionSite&) = default;
};

/// Statement-level assertion calls (bare or `Assert.`/`Assertions.`
/// qualified) and try-catch-with-fail statements of a method body, in source
/// order. Code inside lambda bodies and anonymous classes is not searched.
std::vector<AssertionSite> find_assertions(const MethodUnit& method);

/// Same search over an arbitrary `{ ... }` token block.
std::vector<AssertionSite> find_assertions_in_block(std::span<const SourceToken> body);

bool is_acceptable_assertion(const AssertionSite& site) noexcept;

struct MaskedMethod {
    TokenList masked_tokens;
    TokenList truth_tokens;
};

/// Replaces the site's span in body_tokens with one `<ASSERTION>` token.
/// Throws Error(SpanOutOfRange) when the span does not fit the body.
MaskedMethod mask_assertion(const MethodUnit& method, const AssertionSite& site);

/// True iff the text lexes and parses as one Java call statement or one
/// try statement. The trailing `;` of a call statement is optional.
bool check_syntax(std::string_view assertion_text);

/// Kind of the statement's head call, TryCatchFail for the idiom, nullopt
/// for anything else.
std::optional<AssertionKind> assertion_type_of(std::string_view text);
std::optional<AssertionKind> assertion_type_of(std::span<const SourceToken> tokens);

}  // namespace assertgen::java
