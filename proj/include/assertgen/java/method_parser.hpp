#pragma once

#include "assertgen/java/token.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace assertgen::java {

struct Parameter {
    std::string type_name;
    std::string name;

    friend bool operator==(const Parameter&, const Parameter&) = default;
};

struct MethodUnit {
    std::string name;
    std::string owner_class;
    std::string package;
    bool is_constructor = false;
    std::vector<Parameter> params;
    TokenList signature_tokens;  // annotations and modifiers through the throws clause
    TokenList body_tokens;       // `{` ... `}` inclusive
    std::optional<std::string> doc_text;
    std::pair<std::size_t, std::size_t> source_span{0, 0};  // [start, end) bytes
    std::string source_text;

    /// signature_tokens followed by body_tokens.
    TokenList tokens() const;

    /// `pkg.Owner#name(T1,T2)`; used as the focal identity for split grouping.
    std::string qualified_id() const;

    bool has_annotation(std::string_view name) const;

    friend bool operator==(const MethodUnit&, const MethodUnit&) = default;
};

struct ClassInfo {
    std::string name;
    std::string package;
    std::vector<std::string> field_names;
    std::vector<MethodUnit> methods;  // declaration order; includes anonymous-class members
};

struct CompilationUnit {
    std::string package;
    std::vector<ClassInfo> classes;  // named classes in order of appearance (nested included)

    std::vector<MethodUnit> all_methods() const;
    const ClassInfo* find_class(std::string_view name) const;
};

/// Lightweight structural parse of a Java compilation unit: package,
/// named classes (including nested and local ones), fields, and every method
/// or constructor that has a body. Members of anonymous classes are
/// attributed to the immediately enclosing named class.
/// Throws Error(ParseFailure) on unbalanced delimiters, lexing errors, or a
/// class declaration without a body.
CompilationUnit parse_compilation_unit(std::string_view source);

/// The methods of parse_compilation_unit, in source order.
std::vector<MethodUnit> parse_methods(std::string_view source);

/// True when the bracket kinds `()`, `[]`, `{}` are properly nested.
bool delimiters_balanced(std::span<const SourceToken> tokens);

/// Index of the token closing the bracket opened at `open`, or npos.
std::size_t matching_close(std::span<const SourceToken> tokens, std::size_t open);

}  // namespace assertgen::java
