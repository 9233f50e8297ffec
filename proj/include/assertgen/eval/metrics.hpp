#pragma once

#include "assertgen/corpus/dataset.hpp"
#include "assertgen/io/jsonl.hpp"
#include "assertgen/java/assertions.hpp"
#include "assertgen/predict/predictor.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace assertgen::eval {

/// Ground truth for one sample, always in concrete tokens.
struct Reference {
    std::string sample_id;
    std::vector<std::string> tokens;
    std::optional<java::AssertionKind> kind;
};

/// Abstract truths are mapped back through their sample dictionary.
std::vector<Reference> references_from_samples(std::span<const corpus::DatasetSample> samples);

/// Token texts with one trailing `;` removed. Nullopt if the text does not lex.
std::optional<std::vector<std::string>> normalized_tokens(std::string_view text);
std::vector<std::string> normalized_tokens(std::span<const std::string> tokens);

bool exact_match(std::string_view candidate, std::span<const std::string> truth);

/// Predictions reordered to follow `refs`. Throws Error(MismatchedIds) unless
/// both sides carry the same set of unique ids, Error(EmptyCorpus) if empty.
std::vector<const predict::Prediction*> align(std::span<const predict::Prediction> predictions,
                                              std::span<const Reference> refs);

std::map<int, double> top_k_accuracy(std::span<const predict::Prediction> predictions,
                                     std::span<const Reference> refs, std::span<const int> ks);

/// Corpus BLEU over 1..4-grams with uniform weights. Unigram precision is
/// unsmoothed, higher orders use (matches + 1) / (total + 1). Brevity
/// penalty exp(1 - r/c) when c <= r, and 0 when c = 0.
/// Throws Error(EmptyCorpus) for no sentences, Error(InvalidArgument) when
/// the lists differ in length.
double bleu(std::span<const std::vector<std::string>> candidates,
            std::span<const std::vector<std::string>> references);

struct KindScore {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::size_t support = 0;  // truths of this kind
    std::size_t predicted = 0;
};

struct TypeScores {
    std::map<java::AssertionKind, KindScore> per_kind;  // every kind, including unsupported ones
    double macro_precision = 0.0;
    double macro_recall = 0.0;
    double macro_f1 = 0.0;
    double micro_precision = 0.0;
    double micro_recall = 0.0;
    std::size_t unrecognized_predictions = 0;  // rank-1 label None, or no candidate
    double type_accuracy = 0.0;  // rank-1 kind equals the truth kind
};

TypeScores type_prf(std::span<const predict::Prediction> predictions, std::span<const Reference> refs);

/// Nullopt when no sample of `kind` got its kind right.
std::optional<double> conditional_accuracy(std::span<const predict::Prediction> predictions,
                                           std::span<const Reference> refs, java::AssertionKind kind);

/// Samples without a candidate count as incorrect.
double syntactic_correctness_rate(std::span<const predict::Prediction> predictions);

struct EvalReport {
    std::size_t n_samples = 0;
    std::map<int, double> top_k_accuracy;
    double bleu = 0.0;
    TypeScores types;
    double syntactic_correctness = 0.0;
    std::map<java::AssertionKind, double> conditional_accuracy;
};

EvalReport evaluate(std::span<const predict::Prediction> predictions, std::span<const Reference> refs,
                    std::span<const int> ks);

io::Json report_to_json(const EvalReport& report);
std::string render_table(const EvalReport& report);

}  // namespace assertgen::eval
