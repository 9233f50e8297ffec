#include "assertgen/eval/metrics.hpp"

#include "assertgen/abstraction/abstraction.hpp"
#include "assertgen/error.hpp"
#include "assertgen/java/lexer.hpp"
#include "assertgen/java/token.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <unordered_map>

namespace assertgen::eval {

std::vector<Reference> references_from_samples(std::span<const corpus::DatasetSample> samples)
{
    std::vector<Reference> out;
    out.reserve(samples.size());
    for (const auto& s : samples) {
        Reference r{s.sample_id, s.truth_assertion, s.assertion_kind};
        if (s.token_form == corpus::TokenForm::Abstract) {
            r.tokens = abstraction::deabstract(s.truth_assertion, *s.dictionary);
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<std::string> normalized_tokens(std::span<const std::string> tokens)
{
    std::vector<std::string> out(tokens.begin(), tokens.end());
    if (!out.empty() && out.back() == ";") {
        out.pop_back();
    }
    return out;
}

std::optional<std::vector<std::string>> normalized_tokens(std::string_view text)
{
    try {
        auto tokens = java::texts(java::tokenize(text));
        return normalized_tokens(tokens);
    } catch (const Error&) {
        return std::nullopt;
    }
}

bool exact_match(std::string_view candidate, std::span<const std::string> truth)
{
    auto c = normalized_tokens(candidate);
    return c && *c == normalized_tokens(truth);
}

std::vector<const predict::Prediction*> align(std::span<const predict::Prediction> predictions,
                                              std::span<const Reference> refs)
{
    if (refs.empty()) {
        throw Error(ErrorCode::EmptyCorpus, "no samples to evaluate");
    }
    std::unordered_map<std::string_view, const predict::Prediction*> by_id;
    for (const auto& p : predictions) {
        if (!by_id.emplace(p.sample_id, &p).second) {
            throw Error(ErrorCode::MismatchedIds, "duplicate prediction for " + p.sample_id);
        }
    }
    std::vector<const predict::Prediction*> out;
    out.reserve(refs.size());
    for (const auto& r : refs) {
        auto it = by_id.find(r.sample_id);
        if (it == by_id.end()) {
            throw Error(ErrorCode::MismatchedIds, "no prediction for " + r.sample_id);
        }
        out.push_back(it->second);
    }
    if (predictions.size() != refs.size()) {
        throw Error(ErrorCode::MismatchedIds, std::to_string(predictions.size()) + " predictions for " +
                                                  std::to_string(refs.size()) + " references");
    }
    return out;
}

std::map<int, double> top_k_accuracy(std::span<const predict::Prediction> predictions,
                                     std::span<const Reference> refs, std::span<const int> ks)
{
    auto aligned = align(predictions, refs);
    // rank of the first exact match, or none
    std::vector<std::optional<std::size_t>> hit_rank(refs.size());
    for (std::size_t i = 0; i < refs.size(); ++i) {
        const auto& cands = aligned[i]->candidates;
        for (std::size_t r = 0; r < cands.size(); ++r) {
            if (exact_match(cands[r].text, refs[i].tokens)) {
                hit_rank[i] = r;
                break;
            }
        }
    }
    std::map<int, double> out;
    for (int k : ks) {
        if (k < 1) {
            throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
        }
        auto hits = std::count_if(hit_rank.begin(), hit_rank.end(),
                                  [k](const auto& r) { return r && *r < static_cast<std::size_t>(k); });
        out[k] = static_cast<double>(hits) / static_cast<double>(refs.size());
    }
    return out;
}

namespace {

using NgramCounts = std::map<std::vector<std::string>, std::size_t>;

NgramCounts ngrams(const std::vector<std::string>& tokens, std::size_t n)
{
    NgramCounts out;
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
        ++out[std::vector<std::string>(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                       tokens.begin() + static_cast<std::ptrdiff_t>(i + n))];
    }
    return out;
}

std::optional<java::AssertionKind> rank1_kind(const predict::Prediction& p)
{
    if (p.candidates.empty()) {
        return std::nullopt;
    }
    return java::assertion_type_of(p.candidates.front().text);
}

}  // namespace

double bleu(std::span<const std::vector<std::string>> candidates,
            std::span<const std::vector<std::string>> references)
{
    if (candidates.size() != references.size()) {
        throw Error(ErrorCode::InvalidArgument, "BLEU needs one reference per candidate");
    }
    if (candidates.empty()) {
        throw Error(ErrorCode::EmptyCorpus, "BLEU over an empty corpus");
    }
    constexpr std::size_t kMaxN = 4;
    std::array<std::size_t, kMaxN> matches{};
    std::array<std::size_t, kMaxN> totals{};
    std::size_t c = 0;
    std::size_t r = 0;
    for (std::size_t s = 0; s < candidates.size(); ++s) {
        c += candidates[s].size();
        r += references[s].size();
        for (std::size_t n = 1; n <= kMaxN; ++n) {
            auto ref = ngrams(references[s], n);
            for (const auto& [gram, count] : ngrams(candidates[s], n)) {
                totals[n - 1] += count;
                if (auto it = ref.find(gram); it != ref.end()) {
                    matches[n - 1] += std::min(count, it->second);
                }
            }
        }
    }
    if (c == 0 || matches[0] == 0) {
        return 0.0;
    }
    double log_sum = std::log(static_cast<double>(matches[0]) / static_cast<double>(totals[0]));
    for (std::size_t n = 1; n < kMaxN; ++n) {
        log_sum += std::log(static_cast<double>(matches[n] + 1) / static_cast<double>(totals[n] + 1));
    }
    double bp = c > r ? 1.0 : std::exp(1.0 - static_cast<double>(r) / static_cast<double>(c));
    return bp * std::exp(log_sum / static_cast<double>(kMaxN));
}

TypeScores type_prf(std::span<const predict::Prediction> predictions, std::span<const Reference> refs)
{
    auto aligned = align(predictions, refs);
    std::map<java::AssertionKind, std::size_t> tp;
    TypeScores out;
    for (auto kind : java::kAllAssertionKinds) {
        out.per_kind[kind] = {};
    }
    std::size_t labelled_truths = 0;
    std::size_t labelled_predictions = 0;
    std::size_t correct = 0;
    for (std::size_t i = 0; i < refs.size(); ++i) {
        auto predicted = rank1_kind(*aligned[i]);
        if (predicted) {
            ++out.per_kind[*predicted].predicted;
            ++labelled_predictions;
        } else {
            ++out.unrecognized_predictions;
        }
        if (refs[i].kind) {
            ++out.per_kind[*refs[i].kind].support;
            ++labelled_truths;
            if (predicted == refs[i].kind) {
                ++tp[*predicted];
                ++correct;
            }
        }
    }
    std::size_t supported = 0;
    for (auto& [kind, s] : out.per_kind) {
        auto t = static_cast<double>(tp[kind]);
        s.precision = s.predicted == 0 ? 0.0 : t / static_cast<double>(s.predicted);
        s.recall = s.support == 0 ? 0.0 : t / static_cast<double>(s.support);
        s.f1 = s.precision + s.recall == 0.0 ? 0.0 : 2 * s.precision * s.recall / (s.precision + s.recall);
        if (s.support > 0) {
            ++supported;
            out.macro_precision += s.precision;
            out.macro_recall += s.recall;
            out.macro_f1 += s.f1;
        }
    }
    if (supported > 0) {
        out.macro_precision /= static_cast<double>(supported);
        out.macro_recall /= static_cast<double>(supported);
        out.macro_f1 /= static_cast<double>(supported);
    }
    auto total_correct = static_cast<double>(correct);
    out.micro_precision = labelled_predictions == 0 ? 0.0 : total_correct / static_cast<double>(labelled_predictions);
    out.micro_recall = labelled_truths == 0 ? 0.0 : total_correct / static_cast<double>(labelled_truths);
    out.type_accuracy = total_correct / static_cast<double>(refs.size());
    return out;
}

std::optional<double> conditional_accuracy(std::span<const predict::Prediction> predictions,
                                           std::span<const Reference> refs, java::AssertionKind kind)
{
    auto aligned = align(predictions, refs);
    std::size_t typed = 0;
    std::size_t exact = 0;
    for (std::size_t i = 0; i < refs.size(); ++i) {
        if (refs[i].kind != kind || rank1_kind(*aligned[i]) != kind) {
            continue;
        }
        ++typed;
        exact += exact_match(aligned[i]->candidates.front().text, refs[i].tokens) ? 1 : 0;
    }
    if (typed == 0) {
        return std::nullopt;
    }
    return static_cast<double>(exact) / static_cast<double>(typed);
}

double syntactic_correctness_rate(std::span<const predict::Prediction> predictions)
{
    if (predictions.empty()) {
        throw Error(ErrorCode::EmptyCorpus, "no predictions");
    }
    auto ok = std::count_if(predictions.begin(), predictions.end(), [](const predict::Prediction& p) {
        return !p.candidates.empty() && java::check_syntax(p.candidates.front().text);
    });
    return static_cast<double>(ok) / static_cast<double>(predictions.size());
}

EvalReport evaluate(std::span<const predict::Prediction> predictions, std::span<const Reference> refs,
                    std::span<const int> ks)
{
    auto aligned = align(predictions, refs);
    EvalReport report;
    report.n_samples = refs.size();
    report.top_k_accuracy = top_k_accuracy(predictions, refs, ks);

    std::vector<std::vector<std::string>> hyp;
    std::vector<std::vector<std::string>> ref;
    for (std::size_t i = 0; i < refs.size(); ++i) {
        std::vector<std::string> tokens;
        if (!aligned[i]->candidates.empty()) {
            const auto& text = aligned[i]->candidates.front().text;
            if (auto lexed = normalized_tokens(text)) {
                tokens = std::move(*lexed);
            } else {
                std::istringstream in(text);
                for (std::string w; in >> w;) {
                    tokens.push_back(w);
                }
            }
        }
        hyp.push_back(std::move(tokens));
        ref.push_back(normalized_tokens(refs[i].tokens));
    }
    report.bleu = bleu(hyp, ref);
    report.types = type_prf(predictions, refs);
    report.syntactic_correctness = syntactic_correctness_rate(predictions);
    for (auto kind : java::kAllAssertionKinds) {
        if (auto v = conditional_accuracy(predictions, refs, kind)) {
            report.conditional_accuracy[kind] = *v;
        }
    }
    return report;
}

io::Json report_to_json(const EvalReport& report)
{
    io::Json j;
    j["n_samples"] = report.n_samples;
    io::Json topk = io::Json::object();
    for (const auto& [k, v] : report.top_k_accuracy) {
        topk[std::to_string(k)] = v;
    }
    j["top_k_accuracy"] = std::move(topk);
    j["bleu"] = report.bleu;
    io::Json kinds = io::Json::object();
    for (const auto& [kind, s] : report.types.per_kind) {
        kinds[std::string(java::assertion_kind_name(kind))] = {
            {"precision", s.precision}, {"recall", s.recall}, {"f1", s.f1},
            {"support", s.support},     {"predicted", s.predicted}};
    }
    j["per_kind"] = std::move(kinds);
    j["type_macro_precision"] = report.types.macro_precision;
    j["type_macro_recall"] = report.types.macro_recall;
    j["type_macro_f1"] = report.types.macro_f1;
    j["type_micro_precision"] = report.types.micro_precision;
    j["type_micro_recall"] = report.types.micro_recall;
    j["type_accuracy"] = report.types.type_accuracy;
    j["unrecognized_predictions"] = report.types.unrecognized_predictions;
    j["syntactic_correctness"] = report.syntactic_correctness;
    io::Json cond = io::Json::object();
    for (const auto& [kind, v] : report.conditional_accuracy) {
        cond[std::string(java::assertion_kind_name(kind))] = v;
    }
    j["conditional_accuracy"] = std::move(cond);
    return j;
}

std::string render_table(const EvalReport& report)
{
    std::ostringstream out;
    char buf[160];
    auto line = [&](const char* fmt, auto... args) {
        std::snprintf(buf, sizeof buf, fmt, args...);
        out << buf << '\n';
    };
    line("%-24s %10zu", "samples", report.n_samples);
    for (const auto& [k, v] : report.top_k_accuracy) {
        line("%-24s %10.4f", ("top-" + std::to_string(k) + " accuracy").c_str(), v);
    }
    line("%-24s %10.4f", "BLEU", report.bleu);
    line("%-24s %10.4f", "syntactic correctness", report.syntactic_correctness);
    line("%-24s %10.4f", "type accuracy", report.types.type_accuracy);
    line("%-24s %10.4f", "type macro F1", report.types.macro_f1);
    line("%-24s %10.4f", "type micro precision", report.types.micro_precision);
    out << '\n';
    line("%-16s %9s %9s %9s %8s %11s", "kind", "precision", "recall", "F1", "support", "cond. acc.");
    for (const auto& [kind, s] : report.types.per_kind) {
        auto cond = report.conditional_accuracy.find(kind);
        std::string c = "-";
        if (cond != report.conditional_accuracy.end()) {
            char v[32];
            std::snprintf(v, sizeof v, "%.4f", cond->second);
            c = v;
        }
        line("%-16s %9.4f %9.4f %9.4f %8zu %11s", std::string(java::assertion_kind_name(kind)).c_str(),
             s.precision, s.recall, s.f1, s.support, c.c_str());
    }
    line("%-16s %9.4f %9.4f %9.4f", "macro", report.types.macro_precision, report.types.macro_recall,
         report.types.macro_f1);
    return out.str();
}

}  // namespace assertgen::eval
