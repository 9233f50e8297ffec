#include "assertgen/predict/predictor.hpp"

#include "assertgen/corpus/records.hpp"
#include "assertgen/error.hpp"
#include "assertgen/java/assertions.hpp"
#include "assertgen/java/token.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

namespace assertgen::predict {

void sort_candidates(std::vector<Candidate>& candidates)
{
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.score != b.score) {
            return a.score > b.score;
        }
        return a.text < b.text;
    });
}

Prediction predict_top_k(const corpus::DatasetSample& sample, int k, Predictor& backend, bool require_syntax)
{
    if (k < 1) {
        throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
    }
    auto placeholders = std::count(sample.masked_input.begin(), sample.masked_input.end(),
                                   java::kAssertionPlaceholder);
    if (placeholders != 1) {
        throw Error(ErrorCode::MissingPlaceholder, sample.sample_id + ": input holds " +
                                                       std::to_string(placeholders) + " placeholders");
    }
    Prediction out;
    out.sample_id = sample.sample_id;
    out.backend = backend.name();

    std::map<std::string, double> best;
    for (auto& c : backend.generate(sample, k)) {
        std::string text = c.text;
        if (sample.token_form == corpus::TokenForm::Abstract && !backend.concrete_output()) {
            try {
                auto tokens = corpus::split_tokens(c.text);
                text = java::join(abstraction::deabstract(tokens, *sample.dictionary));
            } catch (const UnknownAbstractTokenError&) {
                out.dropped.push_back("unbound abstract tokens in `" + c.text + "`");
                continue;
            } catch (const Error& e) {
                out.dropped.push_back("unlexable candidate `" + c.text + "`: " + e.what());
                continue;
            }
        } else {
            // token-level identity: `f(x);` and `f ( x ) ;` are one candidate
            try {
                text = java::join(corpus::split_tokens(c.text));
            } catch (const Error&) {
            }
        }
        if (require_syntax && !java::check_syntax(text)) {
            out.dropped.push_back("not a Java statement: `" + text + "`");
            continue;
        }
        auto [it, inserted] = best.emplace(text, c.score);
        if (!inserted) {
            it->second = std::max(it->second, c.score);
        }
    }
    for (auto& [text, score] : best) {
        out.candidates.push_back({text, score});
    }
    sort_candidates(out.candidates);
    if (out.candidates.size() > static_cast<std::size_t>(k)) {
        out.candidates.resize(static_cast<std::size_t>(k));
    }
    return out;
}

std::vector<Prediction> predict_all(std::span<const corpus::DatasetSample> samples, int k,
                                    const PredictorFactory& factory, int jobs, bool require_syntax)
{
    std::vector<Prediction> out(samples.size());
    std::size_t workers = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), 1,
                                                  std::max<std::size_t>(samples.size(), 1));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        try {
            auto backend = factory();
            for (std::size_t i = next++; i < samples.size(); i = next++) {
                out[i] = predict_top_k(samples[i], k, *backend, require_syntax);
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) {
                failure = std::current_exception();
            }
            next = samples.size();
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> threads;
        for (std::size_t w = 0; w < workers; ++w) {
            threads.emplace_back(work);
        }
        for (auto& t : threads) {
            t.join();
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return out;
}

io::Json prediction_to_json(const Prediction& p)
{
    io::Json j;
    j["sample_id"] = p.sample_id;
    j["backend"] = p.backend;
    io::Json cands = io::Json::array();
    for (const auto& c : p.candidates) {
        cands.push_back({{"text", c.text}, {"score", c.score}});
    }
    j["candidates"] = std::move(cands);
    j["dropped"] = p.dropped;
    return j;
}

Prediction prediction_from_json(const io::Json& j)
{
    try {
        Prediction p;
        p.sample_id = j.at("sample_id").get<std::string>();
        p.backend = j.value("backend", std::string());
        for (const auto& c : j.at("candidates")) {
            p.candidates.push_back({c.at("text").get<std::string>(), c.at("score").get<double>()});
        }
        if (j.contains("dropped")) {
            p.dropped = j.at("dropped").get<std::vector<std::string>>();
        }
        return p;
    } catch (const io::Json::exception& e) {
        throw Error(ErrorCode::MalformedRecord, std::string("prediction record: ") + e.what());
    }
}

void export_predictions(const std::vector<Prediction>& predictions, const std::filesystem::path& path)
{
    std::vector<io::Json> records;
    records.reserve(predictions.size());
    for (const auto& p : predictions) {
        records.push_back(prediction_to_json(p));
    }
    io::write_jsonl(path, records);
}

std::vector<Prediction> import_predictions(const std::filesystem::path& path)
{
    std::vector<Prediction> out;
    for (const auto& r : io::read_jsonl(path)) {
        out.push_back(prediction_from_json(r));
    }
    return out;
}

}  // namespace assertgen::predict
