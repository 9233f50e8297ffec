#pragma once

#include "assertgen/corpus/dataset.hpp"
#include "assertgen/io/jsonl.hpp"

#include <chrono>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace assertgen::predict {

struct Candidate {
    std::string text;
    double score = 0.0;

    friend bool operator==(const Candidate&, const Candidate&) = default;
};

struct Prediction {
    std::string sample_id;
    std::vector<Candidate> candidates;  // concrete code, best first
    std::string backend;
    std::vector<std::string> dropped;  // reasons for discarded candidates

    friend bool operator==(const Prediction&, const Prediction&) = default;
};

/// Descending score, then ascending text.
void sort_candidates(std::vector<Candidate>& candidates);

class Predictor {
public:
    virtual ~Predictor() = default;
    virtual std::string name() const = 0;

    /// Up to k candidates, unsorted, possibly with duplicates. They are in
    /// the sample's token form unless concrete_output() is true.
    virtual std::vector<Candidate> generate(const corpus::DatasetSample& sample, int k) = 0;

    virtual bool concrete_output() const { return false; }
};

/// Validates the request, asks the backend, maps abstract candidates back to
/// code with the sample dictionary, drops candidates that cannot be rendered
/// or, when `require_syntax`, fail check_syntax, then sorts and keeps k.
/// Throws Error(InvalidArgument) for k < 1 and Error(MissingPlaceholder)
/// unless the input holds exactly one placeholder.
Prediction predict_top_k(const corpus::DatasetSample& sample, int k, Predictor& backend, bool require_syntax = false);

using PredictorFactory = std::function<std::unique_ptr<Predictor>()>;

/// Predictions for all samples in input order. Each of the `jobs` workers
/// owns one backend built by the factory.
std::vector<Prediction> predict_all(std::span<const corpus::DatasetSample> samples, int k,
                                    const PredictorFactory& factory, int jobs, bool require_syntax = false);

io::Json prediction_to_json(const Prediction& p);
/// Throws Error(MalformedRecord).
Prediction prediction_from_json(const io::Json& j);

void export_predictions(const std::vector<Prediction>& predictions, const std::filesystem::path& path);
std::vector<Prediction> import_predictions(const std::filesystem::path& path);

}  // namespace assertgen::predict
