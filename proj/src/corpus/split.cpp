#include "assertgen/corpus/split.hpp"

#include "assertgen/error.hpp"

#include <cmath>
#include <set>

namespace assertgen::corpus {

namespace {

std::uint64_t fnv1a(std::string_view s) noexcept
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

void SplitSpec::validate() const
{
    if (train < 0 || validation < 0 || test < 0) {
        throw Error(ErrorCode::InvalidArgument, "split ratios must be non-negative");
    }
    if (std::abs(train + validation + test - 1.0) > 1e-9) {
        throw Error(ErrorCode::InvalidArgument, "split ratios must sum to 1");
    }
}

std::string_view split_name(SplitName s) noexcept
{
    switch (s) {
    case SplitName::Train: return "train";
    case SplitName::Validation: return "validation";
    case SplitName::Test: return "test";
    }
    return "?";
}

double group_unit_value(std::string_view group_key, std::uint64_t seed) noexcept
{
    std::uint64_t x = splitmix64(fnv1a(group_key) ^ splitmix64(seed));
    return static_cast<double>(x >> 11) * 0x1.0p-53;
}

SplitName assign_split(std::string_view group_key, const SplitSpec& spec) noexcept
{
    double u = group_unit_value(group_key, spec.seed);
    if (u < spec.train) {
        return SplitName::Train;
    }
    if (u < spec.train + spec.validation) {
        return SplitName::Validation;
    }
    return spec.test > 0 ? SplitName::Test : (spec.validation > 0 ? SplitName::Validation : SplitName::Train);
}

SplitResult split_corpus(const std::vector<DatasetSample>& samples, const SplitSpec& spec)
{
    spec.validate();
    std::set<std::string_view> groups;
    for (const auto& s : samples) {
        groups.insert(s.group_key);
    }
    if (groups.size() < 3) {
        throw Error(ErrorCode::DegenerateCorpus,
                    "need at least 3 groups to split, found " + std::to_string(groups.size()));
    }
    SplitResult out;
    for (const auto& s : samples) {
        switch (assign_split(s.group_key, spec)) {
        case SplitName::Train: out.train.push_back(s); break;
        case SplitName::Validation: out.validation.push_back(s); break;
        case SplitName::Test: out.test.push_back(s); break;
        }
    }
    return out;
}

}  // namespace assertgen::corpus
