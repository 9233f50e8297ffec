#pragma once

#include <json.hpp>

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace assertgen::io {

using Json = nlohmann::ordered_json;

/// Parses every non-blank line as one JSON value. Throws
/// Error(MalformedRecord) naming the line on bad JSON, Error(Io) if the file
/// cannot be opened.
std::vector<Json> read_jsonl(const std::filesystem::path& path);

/// One compact record per line, `\n` terminated. Throws Error(Io).
void write_jsonl(const std::filesystem::path& path, const std::vector<Json>& records);

void write_json(const std::filesystem::path& path, const Json& value);
Json read_json(const std::filesystem::path& path);

/// Whole file, bytes unchanged. Throws Error(Io).
std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view content);

/// Creates the parent directory of `path` when missing.
void ensure_parent(const std::filesystem::path& path);

}  // namespace assertgen::io
