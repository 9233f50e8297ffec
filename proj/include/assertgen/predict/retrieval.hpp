#pragma once

#include "assertgen/predict/predictor.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace assertgen::predict {

/// Multiset Jaccard: |A ∩ B| / |A ∪ B| with multiplicities; 1.0 when both
/// are empty.
double retrieval_similarity(std::span<const std::string> query, std::span<const std::string> entry);

/// Nearest-neighbour index over training inputs.
class RetrievalIndex {
public:
    struct Hit {
        std::size_t entry;
        double score;
    };

    /// Adds every sample; callers pass the training split only.
    static RetrievalIndex build(std::span<const corpus::DatasetSample> train);

    void add(std::span<const std::string> input_tokens, std::string truth_text);

    /// Similarity of the query to every entry, in entry order.
    std::vector<Hit> score_all(std::span<const std::string> query) const;

    std::size_t size() const noexcept { return truths_.size(); }
    const std::string& truth(std::size_t entry) const { return truths_.at(entry); }

private:
    using Bag = std::vector<std::pair<int, int>>;  // (token id, count), sorted by id

    std::map<std::string, int, std::less<>> vocab_;
    std::vector<Bag> bags_;
    std::vector<std::size_t> sizes_;
    std::vector<std::string> truths_;
};

/// Returns the truths of the most similar training inputs, one candidate per
/// distinct truth scored by its best match. Abstract truths are rendered
/// with the query's dictionary; truths it cannot bind are skipped.
class RetrievalPredictor : public Predictor {
public:
    explicit RetrievalPredictor(const RetrievalIndex& index) : index_(index) {}

    std::string name() const override { return "retrieval"; }
    bool concrete_output() const override { return true; }

    /// Throws Error(EmptyIndex) when the index has no entries.
    std::vector<Candidate> generate(const corpus::DatasetSample& sample, int k) override;

private:
    const RetrievalIndex& index_;
};

}  // namespace assertgen::predict
