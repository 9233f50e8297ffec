#pragma once

#include "assertgen/corpus/pairing.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace assertgen::corpus {

struct ScanResult {
    std::vector<TestFocalPair> pairs;
    std::vector<std::filesystem::path> unparseable_files;
};

/// A file is test code when it lives under a `test` directory or its stem
/// carries a `Test` affix.
bool is_test_file(const std::filesystem::path& relative_path);

/// Parses every `.java` file below `root` (sorted by path) and pairs each
/// test method with its focal method. Pairs whose focal class failed to
/// parse are emitted with classes_parsed = false.
ScanResult scan_repository(const std::filesystem::path& root, const std::string& repo_id);

}  // namespace assertgen::corpus
