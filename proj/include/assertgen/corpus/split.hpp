#pragma once

#include "assertgen/corpus/dataset.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace assertgen::corpus {

struct SplitSpec {
    double train = 0.8;
    double validation = 0.1;
    double test = 0.1;
    std::uint64_t seed = 0;

    /// Throws Error(InvalidArgument) unless all ratios are >= 0 and sum to 1.
    void validate() const;
};

enum class SplitName { Train, Validation, Test };

std::string_view split_name(SplitName s) noexcept;

struct SplitResult {
    std::vector<DatasetSample> train;
    std::vector<DatasetSample> validation;
    std::vector<DatasetSample> test;
};

/// Position of a group in [0, 1); a pure function of (group_key, seed).
double group_unit_value(std::string_view group_key, std::uint64_t seed) noexcept;

SplitName assign_split(std::string_view group_key, const SplitSpec& spec) noexcept;

/// Group-preserving split; sample order within each split follows the input.
/// Throws Error(DegenerateCorpus) when fewer than 3 distinct groups exist.
SplitResult split_corpus(const std::vector<DatasetSample>& samples, const SplitSpec& spec);

}  // namespace assertgen::corpus
