#pragma once

#include "assertgen/java/token.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace assertgen::abstraction {

enum class Category { Ident, Method, String, Char, Int, Float, Bool, Assert, Type };

std::string_view category_prefix(Category c) noexcept;

/// Parses `IDENT_3` style tokens; nullopt for anything else.
std::optional<std::pair<Category, std::size_t>> parse_abstract_token(std::string_view token) noexcept;

/// Per-sample bijection between abstract tokens (`METHOD_0`) and concrete
/// lexemes. Indices are dense per category in first-occurrence order.
class AbstractionDictionary {
public:
    using Entry = std::pair<std::string, std::string>;  // (abstract, concrete)

    AbstractionDictionary() = default;

    /// Rebuilds a dictionary from serialized entries. Throws
    /// Error(MalformedRecord) if the entries break bijectivity or density.
    static AbstractionDictionary from_entries(std::span<const Entry> entries);

    /// Abstract token for the lexeme, allocating the next index if unseen.
    std::string intern(Category category, const std::string& lexeme);

    std::optional<std::string> find(Category category, const std::string& lexeme) const;
    std::optional<std::string> concrete(std::string_view abstract_token) const;

    /// Concrete lexemes registered under a category, in index order.
    std::vector<std::string> lexemes(Category category) const;

    const std::vector<Entry>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }

    friend bool operator==(const AbstractionDictionary& a, const AbstractionDictionary& b)
    {
        return a.entries_ == b.entries_;
    }

private:
    std::vector<Entry> entries_;
    std::map<std::pair<Category, std::string>, std::size_t> by_lexeme_;  // -> index in entries_
    std::map<std::string, std::size_t, std::less<>> by_abstract_;
    std::map<Category, std::size_t> next_index_;
};

struct AbstractionConfig {
    int max_input_tokens = 386;
    int max_output_tokens = 64;
    bool include_class_context = true;

    /// Throws Error(InvalidArgument) unless max_input_tokens > 1 and
    /// max_output_tokens >= 1.
    void validate() const;
};

/// Member names of the test and focal classes. They extend the dictionary
/// without being emitted; type_names also decide which identifiers are
/// user-defined types (TYPE_k) rather than library types.
struct ClassContext {
    std::vector<std::string> type_names;
    std::vector<std::string> method_names;
    std::vector<std::string> field_names;
};

struct AbstractResult {
    std::vector<std::string> tokens;
    AbstractionDictionary dictionary;
};

/// Abstract form of one sample: `TEST_METHOD: <test> [FOCAL_METHOD: <focal>]`.
/// Dictionary indices are assigned over the focal method first, then the
/// test method, then the class context.
/// Throws Error(MissingPlaceholder) unless test_tokens hold exactly one
/// `<ASSERTION>`.
AbstractResult abstract(std::span<const java::SourceToken> test_tokens,
                        std::optional<std::span<const java::SourceToken>> focal_tokens,
                        const ClassContext* class_context, const AbstractionConfig& config);

/// Abstracts the ground-truth assertion against the sample dictionary,
/// extending it with lexemes it has not seen.
std::vector<std::string> abstract_truth(std::span<const java::SourceToken> truth_tokens,
                                        AbstractionDictionary& dictionary);

/// Maps abstract tokens back to lexemes. Throws UnknownAbstractTokenError
/// listing every abstract token without a binding.
std::vector<std::string> deabstract(std::span<const std::string> abstract_tokens,
                                    const AbstractionDictionary& dictionary);

/// Cuts the stream to max_input_tokens while keeping the placeholder: kept
/// in place when inside the prefix, appended as the last token otherwise.
/// Throws Error(MissingPlaceholder) unless exactly one placeholder exists.
std::vector<std::string> truncate_input(std::span<const std::string> tokens, const AbstractionConfig& config);

bool fits_output_budget(std::span<const std::string> truth_tokens, const AbstractionConfig& config) noexcept;

}  // namespace assertgen::abstraction
