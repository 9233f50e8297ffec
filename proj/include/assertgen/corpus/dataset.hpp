#pragma once

#include "assertgen/abstraction/abstraction.hpp"
#include "assertgen/corpus/pairing.hpp"
#include "assertgen/java/assertions.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace assertgen::corpus {

enum class InputVariant { TestOnly, TestPlusFocal };
enum class TokenForm { Raw, Abstract };
enum class Subset { One, UpToFive, UpToTen };

std::string_view input_variant_name(InputVariant v) noexcept;
std::string_view token_form_name(TokenForm f) noexcept;
std::string_view subset_name(Subset s) noexcept;
std::optional<InputVariant> parse_input_variant(std::string_view s) noexcept;
std::optional<TokenForm> parse_token_form(std::string_view s) noexcept;
/// Accepts `One`/`UpToFive`/`UpToTen` and the caps `1`/`5`/`10`.
std::optional<Subset> parse_subset(std::string_view s) noexcept;
int subset_cap(Subset s) noexcept;

struct DatasetSample {
    std::string sample_id;
    InputVariant input_variant = InputVariant::TestOnly;
    TokenForm token_form = TokenForm::Raw;
    std::vector<std::string> masked_input;
    std::vector<std::string> truth_assertion;
    std::optional<abstraction::AbstractionDictionary> dictionary;
    java::AssertionKind assertion_kind = java::AssertionKind::AssertEquals;
    std::string group_key;
    Subset subset = Subset::One;

    friend bool operator==(const DatasetSample&, const DatasetSample&) = default;
};

/// Throws Error(MalformedRecord) if the sample breaks the placeholder or
/// dictionary-coverage invariants.
void validate_sample(const DatasetSample& sample);

struct CorpusStats {
    std::size_t input_pairs = 0;
    std::size_t constructor_dropped = 0;
    std::size_t parse_dropped = 0;
    std::size_t length_dropped = 0;
    std::size_t assertion_filtered = 0;  // zero acceptable assertions or above the subset cap
    std::size_t surviving_pairs = 0;
    std::size_t exploded_samples = 0;
    std::size_t output_budget_dropped = 0;
    std::size_t unparseable_files = 0;
    std::map<java::AssertionKind, std::size_t> kind_frequency;  // over exploded sites

    /// input_pairs == surviving_pairs + sum of the four drop counters.
    bool conserved() const noexcept;
};

/// Sites of the test that can become samples: right arity and a truth that
/// passes check_syntax.
std::vector<java::AssertionSite> acceptable_sites(const java::MethodUnit& test);

struct FilterResult {
    std::vector<TestFocalPair> kept;
    CorpusStats stats;
};

/// Drops constructor focals, unparsed classes, tests longer than max_chars
/// characters, and tests whose acceptable-assertion count is 0 or above the
/// subset cap, in that order.
FilterResult filter_pairs(std::vector<TestFocalPair> pairs, Subset subset, std::size_t max_chars = 10000);

/// Sample masking one site, TestPlusFocal when `focal` is given. Id, group
/// key and subset are left for the caller.
DatasetSample sample_for_site(const java::MethodUnit& test, const java::MethodUnit* focal,
                              const java::AssertionSite& site);

/// Raw samples, one per acceptable site and input variant. A pair without
/// focal only yields TestOnly samples. Raw TestPlusFocal input is
/// `<focal> <SEP> <masked test>`.
std::vector<DatasetSample> explode_assertions(const TestFocalPair& pair, Subset subset);

/// Abstract form of a raw sample. Class context is applied per the config.
DatasetSample to_abstract(const DatasetSample& raw, const abstraction::ClassContext* context,
                          const abstraction::AbstractionConfig& config);

/// Truncates every input and drops samples whose truth exceeds the output
/// budget (counted in stats.output_budget_dropped).
std::vector<DatasetSample> apply_budgets(std::vector<DatasetSample> samples,
                                         const abstraction::AbstractionConfig& config, CorpusStats& stats);

struct BuildOptions {
    Subset subset = Subset::UpToFive;
    std::size_t max_chars = 10000;
    TokenForm token_form = TokenForm::Raw;
    abstraction::AbstractionConfig abstraction;
    // restrict to one input variant; both when unset
    std::optional<InputVariant> variant;
};

struct BuildResult {
    std::vector<DatasetSample> samples;
    CorpusStats stats;
};

/// filter -> explode -> optional abstraction -> budgets, in pair order.
BuildResult build_dataset(std::vector<TestFocalPair> pairs, const BuildOptions& options);

}  // namespace assertgen::corpus
