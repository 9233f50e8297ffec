#include "assertgen/corpus/records.hpp"

#include "assertgen/error.hpp"
#include "assertgen/java/lexer.hpp"

#include <algorithm>

namespace assertgen::corpus {

const std::string_view kSystemMessage =
    "You will receive two code snippets that are written in the Java programming language. "
    "The first code snippet contains a test method, and the second code snippet is the focal method that is "
    "exercised by the test method. "
    "The test method snippet contains a masked “<ASSERTION>” part. "
    "Please suggest 10 different and suitable assertions for this masked statement, ranked by their suitability. "
    "Only return Java code! "
    "Only use the JUnit assertion methods “assertTrue”, “assertFalse”, “assertEquals”, "
    "“assertNotEquals”, “assertNull”, “assertNotNull”, “assertThrows”. "
    "Alternatively, assert expected exceptions using a try-catch and the “fail” method. "
    "Add an empty line between assertions.";

const std::string_view kPromptTemplate =
    "Focal method: '''{{ focal_method_code }}''' Test method: '''{{ test_method_code }}'''";

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::MalformedRecord, what); }

const io::Json& field(const io::Json& record, const char* name)
{
    auto it = record.find(name);
    if (it == record.end()) {
        malformed(std::string("record missing `") + name + "`");
    }
    return *it;
}

std::string string_field(const io::Json& record, const char* name)
{
    const auto& v = field(record, name);
    if (!v.is_string()) {
        malformed(std::string("`") + name + "` is not a string");
    }
    return v.get<std::string>();
}

void replace_all(std::string& s, std::string_view from, std::string_view to)
{
    for (auto pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size())) {
        s.replace(pos, from.size(), to);
    }
}

}  // namespace

std::vector<std::string> split_tokens(std::string_view joined)
{
    return java::texts(java::tokenize(joined, {.reserved_markers = true}));
}

io::Json sample_to_json(const DatasetSample& s)
{
    io::Json j;
    j["sample_id"] = s.sample_id;
    j["input_variant"] = input_variant_name(s.input_variant);
    j["token_form"] = token_form_name(s.token_form);
    j["masked_input"] = java::join(s.masked_input);
    j["truth_assertion"] = java::join(s.truth_assertion);
    if (s.dictionary) {
        io::Json entries = io::Json::array();
        for (const auto& [abs, lexeme] : s.dictionary->entries()) {
            entries.push_back(io::Json::array({abs, lexeme}));
        }
        j["dictionary"] = std::move(entries);
    } else {
        j["dictionary"] = nullptr;
    }
    j["assertion_kind"] = java::assertion_kind_name(s.assertion_kind);
    j["group_key"] = s.group_key;
    j["subset"] = subset_name(s.subset);
    return j;
}

DatasetSample sample_from_json(const io::Json& record)
{
    if (!record.is_object()) {
        malformed("record is not an object");
    }
    DatasetSample s;
    s.sample_id = string_field(record, "sample_id");
    auto variant = parse_input_variant(string_field(record, "input_variant"));
    auto form = parse_token_form(string_field(record, "token_form"));
    auto kind = java::assertion_kind_from_name(string_field(record, "assertion_kind"));
    auto subset = parse_subset(string_field(record, "subset"));
    if (!variant || !form || !kind || !subset) {
        malformed(s.sample_id + ": unknown enum value");
    }
    s.input_variant = *variant;
    s.token_form = *form;
    s.assertion_kind = *kind;
    s.subset = *subset;
    s.group_key = string_field(record, "group_key");
    try {
        s.masked_input = split_tokens(string_field(record, "masked_input"));
        s.truth_assertion = split_tokens(string_field(record, "truth_assertion"));
    } catch (const Error& e) {
        if (e.code() == ErrorCode::MalformedRecord) {
            throw;
        }
        malformed(s.sample_id + ": " + e.what());
    }
    const auto& dict = field(record, "dictionary");
    if (!dict.is_null()) {
        if (!dict.is_array()) {
            malformed(s.sample_id + ": dictionary is not a list");
        }
        std::vector<abstraction::AbstractionDictionary::Entry> entries;
        for (const auto& e : dict) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
                malformed(s.sample_id + ": dictionary entry is not a pair of strings");
            }
            entries.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
        }
        s.dictionary = abstraction::AbstractionDictionary::from_entries(entries);
    }
    validate_sample(s);
    return s;
}

void export_samples(const std::vector<DatasetSample>& samples, const std::filesystem::path& path)
{
    std::vector<io::Json> records;
    records.reserve(samples.size());
    for (const auto& s : samples) {
        records.push_back(sample_to_json(s));
    }
    io::write_jsonl(path, records);
}

std::vector<DatasetSample> import_samples(const std::filesystem::path& path)
{
    std::vector<DatasetSample> out;
    std::size_t n = 0;
    for (const auto& r : io::read_jsonl(path)) {
        ++n;
        try {
            out.push_back(sample_from_json(r));
        } catch (const Error& e) {
            throw Error(ErrorCode::MalformedRecord, path.string() + " record " + std::to_string(n) + ": " + e.what());
        }
    }
    return out;
}

Prompt render_prompt(const DatasetSample& sample)
{
    if (sample.token_form != TokenForm::Raw) {
        throw Error(ErrorCode::InvalidArgument, sample.sample_id + ": prompts are built from raw samples");
    }
    auto sep = std::find(sample.masked_input.begin(), sample.masked_input.end(), java::kSeparatorMarker);
    if (sample.input_variant != InputVariant::TestPlusFocal || sep == sample.masked_input.end()) {
        throw Error(ErrorCode::MissingFocal, sample.sample_id + ": sample has no focal method");
    }
    std::vector<std::string> focal(sample.masked_input.begin(), sep);
    std::vector<std::string> test(sep + 1, sample.masked_input.end());
    Prompt p;
    p.sample_id = sample.sample_id;
    p.system = std::string(kSystemMessage);
    p.user = std::string(kPromptTemplate);
    replace_all(p.user, "{{ focal_method_code }}", java::join(focal));
    replace_all(p.user, "{{ test_method_code }}", java::join(test));
    return p;
}

void export_prompts(const std::vector<DatasetSample>& samples, const std::filesystem::path& path)
{
    std::vector<io::Json> records;
    for (const auto& s : samples) {
        auto p = render_prompt(s);
        io::Json j;
        j["sample_id"] = p.sample_id;
        j["system"] = p.system;
        j["prompt"] = p.user;
        records.push_back(std::move(j));
    }
    io::write_jsonl(path, records);
}

io::Json stats_to_json(const CorpusStats& st)
{
    io::Json j;
    j["input_pairs"] = st.input_pairs;
    j["constructor_dropped"] = st.constructor_dropped;
    j["parse_dropped"] = st.parse_dropped;
    j["length_dropped"] = st.length_dropped;
    j["assertion_filtered"] = st.assertion_filtered;
    j["surviving_pairs"] = st.surviving_pairs;
    j["exploded_samples"] = st.exploded_samples;
    j["output_budget_dropped"] = st.output_budget_dropped;
    j["unparseable_files"] = st.unparseable_files;
    io::Json freq = io::Json::object();
    for (auto k : java::kAllAssertionKinds) {
        auto it = st.kind_frequency.find(k);
        freq[std::string(java::assertion_kind_name(k))] = it == st.kind_frequency.end() ? 0 : it->second;
    }
    j["kind_frequency"] = std::move(freq);
    return j;
}

}  // namespace assertgen::corpus
