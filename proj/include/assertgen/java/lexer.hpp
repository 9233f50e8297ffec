#pragma once

#include "assertgen/java/token.hpp"

#include <string_view>
#include <vector>

namespace assertgen::java {

struct LexOptions {
    // Recognize <ASSERTION>, <SEP>, TEST_METHOD: and FOCAL_METHOD: as single
    // Marker tokens. Off for raw Java sources, on for dataset token streams.
    bool reserved_markers = false;
};

struct Comment {
    std::string text;
    std::size_t offset = 0;
    bool is_doc = false;  // starts with "/**"
};

struct LexResult {
    TokenList tokens;
    std::vector<Comment> comments;
};

/// Java lexical analysis. Comments are dropped from the token stream;
/// string, char and text-block literals are one token including quotes.
/// Throws Error(UnterminatedLiteral) for an unclosed literal or comment.
TokenList tokenize(std::string_view source, LexOptions options = {});

/// Same as tokenize, additionally returning the comments with their offsets.
LexResult lex(std::string_view source, LexOptions options = {});

bool is_java_keyword(std::string_view word) noexcept;

}  // namespace assertgen::java
