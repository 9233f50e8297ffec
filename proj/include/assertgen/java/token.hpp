#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace assertgen::java {

enum class TokenKind {
    Identifier,
    Keyword,
    StringLit,
    CharLit,
    IntLit,
    FloatLit,
    BoolLit,
    NullLit,
    Operator,
    Separator,
    Annotation,
    // Reserved pipeline markers: <ASSERTION>, <SEP>, TEST_METHOD:, FOCAL_METHOD:.
    Marker,
};

std::string_view token_kind_name(TokenKind kind) noexcept;

struct SourceToken {
    std::string text;
    TokenKind kind = TokenKind::Identifier;
    std::size_t offset = 0;

    bool is(std::string_view s) const noexcept { return text == s; }
    std::size_t end_offset() const noexcept { return offset + text.size(); }

    friend bool operator==(const SourceToken&, const SourceToken&) = default;
};

using TokenList = std::vector<SourceToken>;

inline constexpr std::string_view kAssertionPlaceholder = "<ASSERTION>";
inline constexpr std::string_view kSeparatorMarker = "<SEP>";
inline constexpr std::string_view kTestMethodMarker = "TEST_METHOD:";
inline constexpr std::string_view kFocalMethodMarker = "FOCAL_METHOD:";

bool is_reserved_marker(std::string_view text) noexcept;

std::vector<std::string> texts(std::span<const SourceToken> tokens);

/// Space-joined token texts.
std::string join(std::span<const SourceToken> tokens);
std::string join(std::span<const std::string> texts);

}  // namespace assertgen::java
