#pragma once

#include "assertgen/abstraction/abstraction.hpp"
#include "assertgen/java/method_parser.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace assertgen::corpus {

enum class FocalDetection { ClassAndNameMatch, CallIntersection, None };

std::string_view focal_detection_name(FocalDetection d) noexcept;

struct TestFocalPair {
    java::MethodUnit test;
    std::optional<java::MethodUnit> focal;
    FocalDetection focal_detection = FocalDetection::None;
    std::string repo_id;
    // false when the test or focal class could not be parsed into a syntax tree
    bool classes_parsed = true;
    abstraction::ClassContext context;
};

struct ClassRef {
    std::string name;
    std::string package;

    friend bool operator==(const ClassRef&, const ClassRef&) = default;
};

/// `name` with one case-insensitive `test` prefix (preferred) or suffix
/// removed; nullopt if it has neither or nothing would remain.
std::optional<std::string> strip_test_affix(std::string_view name);

/// The unique same-package candidate whose name equals the affix-stripped
/// test class name.
std::optional<ClassRef> match_focal_class(std::string_view test_class, std::string_view package,
                                          const std::vector<ClassRef>& candidates);

/// Names called in the test body (`name(`), excluding `new T(` creations.
std::vector<std::string> invoked_method_names(const java::MethodUnit& method);

/// Methods2Test-style focal method lookup: name match first, then a unique
/// call intersection.
std::pair<std::optional<java::MethodUnit>, FocalDetection>
match_focal_method(const java::MethodUnit& test, const std::vector<java::MethodUnit>& focal_class_methods);

/// `@Test` annotated, or named `test...` when unannotated.
bool is_test_method(const java::MethodUnit& method);

}  // namespace assertgen::corpus
