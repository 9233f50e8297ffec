#pragma once

#include "assertgen/corpus/dataset.hpp"
#include "assertgen/io/jsonl.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace assertgen::corpus {

io::Json sample_to_json(const DatasetSample& sample);

/// Throws Error(MalformedRecord) on missing or ill-typed fields and on
/// samples that break validate_sample.
DatasetSample sample_from_json(const io::Json& record);

void export_samples(const std::vector<DatasetSample>& samples, const std::filesystem::path& path);
std::vector<DatasetSample> import_samples(const std::filesystem::path& path);

/// Space-joined token text split back into tokens (markers recognized).
std::vector<std::string> split_tokens(std::string_view joined);

/// System message for chat-model prompting.
extern const std::string_view kSystemMessage;
extern const std::string_view kPromptTemplate;

struct Prompt {
    std::string sample_id;
    std::string system;
    std::string user;
};

/// Fills the template with the focal and masked test segments of a raw
/// TestPlusFocal sample. Throws Error(MissingFocal) for TestOnly samples and
/// Error(InvalidArgument) for abstract ones.
Prompt render_prompt(const DatasetSample& sample);

void export_prompts(const std::vector<DatasetSample>& samples, const std::filesystem::path& path);

io::Json stats_to_json(const CorpusStats& stats);

}  // namespace assertgen::corpus
