#include "assertgen/corpus/pairing.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace assertgen::corpus {

namespace {

bool iequals(std::string_view a, std::string_view b)
{
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](unsigned char x, unsigned char y) {
               return std::tolower(x) == std::tolower(y);
           });
}

// Unique non-constructor with the name, else a unique constructor.
std::optional<java::MethodUnit> unique_named(const std::vector<java::MethodUnit>& methods, std::string_view name,
                                             bool case_insensitive)
{
    const java::MethodUnit* method = nullptr;
    const java::MethodUnit* ctor = nullptr;
    int methods_found = 0;
    int ctors_found = 0;
    for (const auto& m : methods) {
        bool hit = case_insensitive ? iequals(m.name, name) : m.name == name;
        if (!hit) {
            continue;
        }
        if (m.is_constructor) {
            ctor = &m;
            ++ctors_found;
        } else {
            method = &m;
            ++methods_found;
        }
    }
    if (methods_found == 1) {
        return *method;
    }
    if (methods_found == 0 && ctors_found == 1) {
        return *ctor;
    }
    return std::nullopt;
}

}  // namespace

std::string_view focal_detection_name(FocalDetection d) noexcept
{
    switch (d) {
    case FocalDetection::ClassAndNameMatch: return "ClassAndNameMatch";
    case FocalDetection::CallIntersection: return "CallIntersection";
    case FocalDetection::None: return "None";
    }
    return "?";
}

std::optional<std::string> strip_test_affix(std::string_view name)
{
    constexpr std::string_view affix = "test";
    if (name.size() <= affix.size()) {
        return std::nullopt;
    }
    if (iequals(name.substr(0, affix.size()), affix)) {
        return std::string(name.substr(affix.size()));
    }
    if (iequals(name.substr(name.size() - affix.size()), affix)) {
        return std::string(name.substr(0, name.size() - affix.size()));
    }
    return std::nullopt;
}

std::optional<ClassRef> match_focal_class(std::string_view test_class, std::string_view package,
                                          const std::vector<ClassRef>& candidates)
{
    auto stripped = strip_test_affix(test_class);
    if (!stripped) {
        return std::nullopt;
    }
    std::optional<ClassRef> found;
    for (const auto& c : candidates) {
        if (c.package != package || c.name != *stripped) {
            continue;
        }
        if (found && *found != c) {
            return std::nullopt;
        }
        found = c;
    }
    return found;
}

std::vector<std::string> invoked_method_names(const java::MethodUnit& method)
{
    std::vector<std::string> out;
    const auto& body = method.body_tokens;
    for (std::size_t i = 0; i + 1 < body.size(); ++i) {
        if (body[i].kind != java::TokenKind::Identifier || body[i + 1].text != "(") {
            continue;
        }
        if (i > 0 && body[i - 1].text == "new") {
            continue;
        }
        if (std::find(out.begin(), out.end(), body[i].text) == out.end()) {
            out.push_back(body[i].text);
        }
    }
    return out;
}

std::pair<std::optional<java::MethodUnit>, FocalDetection>
match_focal_method(const java::MethodUnit& test, const std::vector<java::MethodUnit>& focal_class_methods)
{
    if (auto stripped = strip_test_affix(test.name)) {
        if (auto m = unique_named(focal_class_methods, *stripped, true)) {
            return {std::move(m), FocalDetection::ClassAndNameMatch};
        }
    }
    std::set<std::string> focal_names;
    for (const auto& m : focal_class_methods) {
        if (!m.is_constructor) {
            focal_names.insert(m.name);
        }
    }
    std::vector<std::string> common;
    for (const auto& name : invoked_method_names(test)) {
        if (focal_names.contains(name)) {
            common.push_back(name);
        }
    }
    if (common.size() == 1) {
        if (auto m = unique_named(focal_class_methods, common[0], false)) {
            return {std::move(m), FocalDetection::CallIntersection};
        }
    }
    return {std::nullopt, FocalDetection::None};
}

bool is_test_method(const java::MethodUnit& method)
{
    if (method.is_constructor) {
        return false;
    }
    if (method.has_annotation("Test")) {
        return true;
    }
    return method.name.size() > 4 && method.name.starts_with("test") && method.params.empty();
}

}  // namespace assertgen::corpus
