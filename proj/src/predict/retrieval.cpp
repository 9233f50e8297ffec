#include "assertgen/predict/retrieval.hpp"

#include "assertgen/abstraction/abstraction.hpp"
#include "assertgen/corpus/records.hpp"
#include "assertgen/error.hpp"
#include "assertgen/java/token.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace assertgen::predict {

double retrieval_similarity(std::span<const std::string> query, std::span<const std::string> entry)
{
    if (query.empty() && entry.empty()) {
        return 1.0;
    }
    std::unordered_map<std::string_view, std::pair<std::size_t, std::size_t>> counts;
    for (const auto& t : query) {
        ++counts[t].first;
    }
    for (const auto& t : entry) {
        ++counts[t].second;
    }
    std::size_t inter = 0;
    std::size_t uni = 0;
    for (const auto& [tok, c] : counts) {
        inter += std::min(c.first, c.second);
        uni += std::max(c.first, c.second);
    }
    return static_cast<double>(inter) / static_cast<double>(uni);
}

RetrievalIndex RetrievalIndex::build(std::span<const corpus::DatasetSample> train)
{
    RetrievalIndex index;
    for (const auto& s : train) {
        index.add(s.masked_input, java::join(s.truth_assertion));
    }
    return index;
}

void RetrievalIndex::add(std::span<const std::string> input_tokens, std::string truth_text)
{
    std::map<int, int> counts;
    for (const auto& t : input_tokens) {
        auto it = vocab_.find(t);
        if (it == vocab_.end()) {
            it = vocab_.emplace(t, static_cast<int>(vocab_.size())).first;
        }
        ++counts[it->second];
    }
    bags_.emplace_back(counts.begin(), counts.end());
    sizes_.push_back(input_tokens.size());
    truths_.push_back(std::move(truth_text));
}

std::vector<RetrievalIndex::Hit> RetrievalIndex::score_all(std::span<const std::string> query) const
{
    // tokens outside the vocabulary only enlarge the union
    std::map<int, int> counts;
    for (const auto& t : query) {
        if (auto it = vocab_.find(t); it != vocab_.end()) {
            ++counts[it->second];
        }
    }
    Bag q(counts.begin(), counts.end());
    std::vector<Hit> hits;
    hits.reserve(bags_.size());
    for (std::size_t e = 0; e < bags_.size(); ++e) {
        const auto& bag = bags_[e];
        std::size_t inter = 0;
        auto a = q.begin();
        auto b = bag.begin();
        while (a != q.end() && b != bag.end()) {
            if (a->first < b->first) {
                ++a;
            } else if (b->first < a->first) {
                ++b;
            } else {
                inter += static_cast<std::size_t>(std::min(a->second, b->second));
                ++a;
                ++b;
            }
        }
        std::size_t uni = query.size() + sizes_[e] - inter;
        hits.push_back({e, uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni)});
    }
    return hits;
}

std::vector<Candidate> RetrievalPredictor::generate(const corpus::DatasetSample& sample, int k)
{
    if (index_.size() == 0) {
        throw Error(ErrorCode::EmptyIndex, "retrieval index has no entries");
    }
    std::map<std::string_view, double> best;
    for (const auto& hit : index_.score_all(sample.masked_input)) {
        auto [it, inserted] = best.emplace(index_.truth(hit.entry), hit.score);
        if (!inserted) {
            it->second = std::max(it->second, hit.score);
        }
    }
    std::vector<Candidate> out;
    for (const auto& [truth, score] : best) {
        if (sample.token_form == corpus::TokenForm::Raw) {
            out.push_back({std::string(truth), score});
            continue;
        }
        try {
            auto tokens = abstraction::deabstract(corpus::split_tokens(truth), *sample.dictionary);
            out.push_back({java::join(tokens), score});
        } catch (const UnknownAbstractTokenError&) {
        }
    }
    sort_candidates(out);
    if (out.size() > static_cast<std::size_t>(k)) {
        out.resize(static_cast<std::size_t>(k));
    }
    return out;
}

}  // namespace assertgen::predict
