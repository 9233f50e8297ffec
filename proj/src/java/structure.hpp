#pragma once

// Token-structure helpers shared by the parser and the assertion scanner.

#include "assertgen/java/token.hpp"

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace assertgen::java::detail {

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

inline bool is_open(const SourceToken& t)
{
    return t.kind == TokenKind::Separator && (t.text == "(" || t.text == "[" || t.text == "{");
}

inline bool is_close(const SourceToken& t)
{
    return t.kind == TokenKind::Separator && (t.text == ")" || t.text == "]" || t.text == "}");
}

inline char closer_for(const std::string& open) { return open == "(" ? ')' : open == "[" ? ']' : '}'; }

// match[i] is the partner index of every bracket token, npos otherwise.
// Returns false on any nesting error.
inline bool build_match_table(std::span<const SourceToken> tokens, std::vector<std::size_t>& match)
{
    match.assign(tokens.size(), npos);
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (is_open(tokens[i])) {
            stack.push_back(i);
        } else if (is_close(tokens[i])) {
            if (stack.empty() || closer_for(tokens[stack.back()].text) != tokens[i].text[0]) {
                return false;
            }
            match[i] = stack.back();
            match[stack.back()] = i;
            stack.pop_back();
        }
    }
    return stack.empty();
}

// Change in `<`/`>` nesting for generic argument lists.
inline int angle_delta(const SourceToken& t)
{
    if (t.kind != TokenKind::Operator) {
        return 0;
    }
    if (t.text == "<") {
        return 1;
    }
    if (t.text == ">") {
        return -1;
    }
    if (t.text == ">>") {
        return -2;
    }
    if (t.text == ">>>") {
        return -3;
    }
    return 0;
}

// `new Type<...>(...) {` ending right before the brace at `brace`.
inline bool is_anonymous_open(std::span<const SourceToken> tokens, const std::vector<std::size_t>& match,
                              std::size_t brace)
{
    if (brace == 0 || tokens[brace - 1].text != ")") {
        return false;
    }
    std::size_t open = match[brace - 1];
    if (open == 0 || open == npos) {
        return false;
    }
    std::size_t j = open - 1;
    if (angle_delta(tokens[j]) < 0) {
        int depth = 0;
        while (true) {
            depth += angle_delta(tokens[j]);
            if (depth == 0 || j == 0) {
                break;
            }
            --j;
        }
        if (j == 0) {
            return false;
        }
        --j;
    }
    while (j >= 2 && tokens[j].kind == TokenKind::Identifier && tokens[j - 1].text == ".") {
        j -= 2;
    }
    return j >= 1 && tokens[j].kind == TokenKind::Identifier && tokens[j - 1].text == "new";
}

}  // namespace assertgen::java::detail
