#include "assertgen/corpus/dataset.hpp"

#include "assertgen/error.hpp"
#include "assertgen/java/lexer.hpp"

#include <algorithm>

namespace assertgen::corpus {

using java::kAssertionPlaceholder;
using java::kSeparatorMarker;

std::string_view input_variant_name(InputVariant v) noexcept
{
    return v == InputVariant::TestOnly ? "TestOnly" : "TestPlusFocal";
}

std::string_view token_form_name(TokenForm f) noexcept { return f == TokenForm::Raw ? "Raw" : "Abstract"; }

std::string_view subset_name(Subset s) noexcept
{
    switch (s) {
    case Subset::One: return "One";
    case Subset::UpToFive: return "UpToFive";
    case Subset::UpToTen: return "UpToTen";
    }
    return "?";
}

std::optional<InputVariant> parse_input_variant(std::string_view s) noexcept
{
    if (s == "TestOnly") {
        return InputVariant::TestOnly;
    }
    if (s == "TestPlusFocal") {
        return InputVariant::TestPlusFocal;
    }
    return std::nullopt;
}

std::optional<TokenForm> parse_token_form(std::string_view s) noexcept
{
    if (s == "Raw" || s == "raw") {
        return TokenForm::Raw;
    }
    if (s == "Abstract" || s == "abstract") {
        return TokenForm::Abstract;
    }
    return std::nullopt;
}

std::optional<Subset> parse_subset(std::string_view s) noexcept
{
    if (s == "One" || s == "1") {
        return Subset::One;
    }
    if (s == "UpToFive" || s == "5") {
        return Subset::UpToFive;
    }
    if (s == "UpToTen" || s == "10") {
        return Subset::UpToTen;
    }
    return std::nullopt;
}

int subset_cap(Subset s) noexcept
{
    switch (s) {
    case Subset::One: return 1;
    case Subset::UpToFive: return 5;
    case Subset::UpToTen: return 10;
    }
    return 0;
}

void validate_sample(const DatasetSample& sample)
{
    auto placeholders = std::count(sample.masked_input.begin(), sample.masked_input.end(), kAssertionPlaceholder);
    if (placeholders != 1) {
        throw Error(ErrorCode::MalformedRecord, sample.sample_id + ": masked_input holds " +
                                                    std::to_string(placeholders) + " placeholders");
    }
    if (sample.token_form == TokenForm::Raw) {
        if (sample.dictionary) {
            throw Error(ErrorCode::MalformedRecord, sample.sample_id + ": raw sample carries a dictionary");
        }
        return;
    }
    if (!sample.dictionary) {
        throw Error(ErrorCode::MalformedRecord, sample.sample_id + ": abstract sample without dictionary");
    }
    for (const auto* stream : {&sample.masked_input, &sample.truth_assertion}) {
        for (const auto& tok : *stream) {
            if (abstraction::parse_abstract_token(tok) && !sample.dictionary->concrete(tok)) {
                throw Error(ErrorCode::MalformedRecord, sample.sample_id + ": unbound abstract token " + tok);
            }
        }
    }
}

bool CorpusStats::conserved() const noexcept
{
    return input_pairs ==
           surviving_pairs + constructor_dropped + parse_dropped + length_dropped + assertion_filtered;
}

std::vector<java::AssertionSite> acceptable_sites(const java::MethodUnit& test)
{
    std::vector<java::AssertionSite> out;
    for (const auto& site : java::find_assertions(test)) {
        if (!java::is_acceptable_assertion(site)) {
            continue;
        }
        auto first = test.body_tokens.begin() + static_cast<std::ptrdiff_t>(site.token_span.begin);
        auto last = test.body_tokens.begin() + static_cast<std::ptrdiff_t>(site.token_span.end);
        if (java::check_syntax(java::join(std::span<const java::SourceToken>(first, last)))) {
            out.push_back(site);
        }
    }
    return out;
}

FilterResult filter_pairs(std::vector<TestFocalPair> pairs, Subset subset, std::size_t max_chars)
{
    FilterResult out;
    auto& st = out.stats;
    st.input_pairs = pairs.size();
    auto cap = static_cast<std::size_t>(subset_cap(subset));
    for (auto& pair : pairs) {
        if (pair.focal && pair.focal->is_constructor) {
            ++st.constructor_dropped;
            continue;
        }
        bool parsed = pair.classes_parsed && java::delimiters_balanced(pair.test.body_tokens) &&
                      (!pair.focal || java::delimiters_balanced(pair.focal->body_tokens));
        if (!parsed) {
            ++st.parse_dropped;
            continue;
        }
        if (pair.test.source_text.size() > max_chars) {
            ++st.length_dropped;
            continue;
        }
        auto n = acceptable_sites(pair.test).size();
        if (n == 0 || n > cap) {
            ++st.assertion_filtered;
            continue;
        }
        out.kept.push_back(std::move(pair));
    }
    st.surviving_pairs = out.kept.size();
    return out;
}

namespace {

std::string group_key_of(const TestFocalPair& pair)
{
    std::string prefix = pair.repo_id.empty() ? "" : pair.repo_id + ":";
    if (pair.focal) {
        return prefix + pair.focal->qualified_id();
    }
    const auto& t = pair.test;
    return prefix + (t.package.empty() ? t.owner_class : t.package + "." + t.owner_class);
}

}  // namespace

DatasetSample sample_for_site(const java::MethodUnit& test, const java::MethodUnit* focal,
                              const java::AssertionSite& site)
{
    auto masked = java::mask_assertion(test, site);
    DatasetSample s;
    s.input_variant = focal ? InputVariant::TestPlusFocal : InputVariant::TestOnly;
    if (focal) {
        s.masked_input = java::texts(focal->tokens());
        s.masked_input.emplace_back(kSeparatorMarker);
    }
    auto sig = java::texts(test.signature_tokens);
    auto body = java::texts(masked.masked_tokens);
    s.masked_input.insert(s.masked_input.end(), sig.begin(), sig.end());
    s.masked_input.insert(s.masked_input.end(), body.begin(), body.end());
    s.truth_assertion = java::texts(masked.truth_tokens);
    s.assertion_kind = site.kind;
    return s;
}

std::vector<DatasetSample> explode_assertions(const TestFocalPair& pair, Subset subset)
{
    std::vector<DatasetSample> out;
    auto sites = acceptable_sites(pair.test);
    auto group = group_key_of(pair);
    std::string id_base = (pair.repo_id.empty() ? "" : pair.repo_id + "/") + pair.test.qualified_id();
    for (std::size_t n = 0; n < sites.size(); ++n) {
        auto s = sample_for_site(pair.test, nullptr, sites[n]);
        s.sample_id = id_base + "@" + std::to_string(n) + ":TO";
        s.group_key = group;
        s.subset = subset;
        out.push_back(std::move(s));
        if (pair.focal) {
            s = sample_for_site(pair.test, &*pair.focal, sites[n]);
            s.sample_id = id_base + "@" + std::to_string(n) + ":TF";
            s.group_key = group;
            s.subset = subset;
            out.push_back(std::move(s));
        }
    }
    return out;
}

DatasetSample to_abstract(const DatasetSample& raw, const abstraction::ClassContext* context,
                          const abstraction::AbstractionConfig& config)
{
    if (raw.token_form != TokenForm::Raw) {
        throw Error(ErrorCode::InvalidArgument, raw.sample_id + ": sample is already abstract");
    }
    auto relex = [](auto first, auto last) {
        std::vector<std::string> part(first, last);
        return java::tokenize(java::join(part), {.reserved_markers = true});
    };
    auto sep = std::find(raw.masked_input.begin(), raw.masked_input.end(), kSeparatorMarker);
    java::TokenList test;
    std::optional<java::TokenList> focal;
    if (sep == raw.masked_input.end()) {
        test = relex(raw.masked_input.begin(), raw.masked_input.end());
    } else {
        focal = relex(raw.masked_input.begin(), sep);
        test = relex(sep + 1, raw.masked_input.end());
    }
    std::optional<std::span<const java::SourceToken>> focal_span;
    if (focal) {
        focal_span = *focal;
    }
    auto res = abstraction::abstract(test, focal_span, context, config);
    auto truth = relex(raw.truth_assertion.begin(), raw.truth_assertion.end());

    DatasetSample out = raw;
    out.token_form = TokenForm::Abstract;
    out.truth_assertion = abstraction::abstract_truth(truth, res.dictionary);
    out.masked_input = std::move(res.tokens);
    out.dictionary = std::move(res.dictionary);
    return out;
}

std::vector<DatasetSample> apply_budgets(std::vector<DatasetSample> samples,
                                         const abstraction::AbstractionConfig& config, CorpusStats& stats)
{
    config.validate();
    std::vector<DatasetSample> out;
    out.reserve(samples.size());
    for (auto& s : samples) {
        if (!abstraction::fits_output_budget(s.truth_assertion, config)) {
            ++stats.output_budget_dropped;
            continue;
        }
        s.masked_input = abstraction::truncate_input(s.masked_input, config);
        out.push_back(std::move(s));
    }
    return out;
}

BuildResult build_dataset(std::vector<TestFocalPair> pairs, const BuildOptions& options)
{
    auto filtered = filter_pairs(std::move(pairs), options.subset, options.max_chars);
    BuildResult out;
    out.stats = filtered.stats;
    std::vector<DatasetSample> samples;
    for (const auto& pair : filtered.kept) {
        for (const auto& site : acceptable_sites(pair.test)) {
            ++out.stats.kind_frequency[site.kind];
        }
        for (auto& s : explode_assertions(pair, options.subset)) {
            if (options.variant && s.input_variant != *options.variant) {
                continue;
            }
            if (options.token_form == TokenForm::Abstract) {
                s = to_abstract(s, &pair.context, options.abstraction);
            }
            samples.push_back(std::move(s));
        }
    }
    out.stats.exploded_samples = samples.size();
    out.samples = apply_budgets(std::move(samples), options.abstraction, out.stats);
    return out;
}

}  // namespace assertgen::corpus
