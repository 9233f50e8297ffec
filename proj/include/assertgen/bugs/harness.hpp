#pragma once

#include "assertgen/corpus/dataset.hpp"
#include "assertgen/io/jsonl.hpp"
#include "assertgen/java/assertions.hpp"
#include "assertgen/java/method_parser.hpp"

#include <array>
#include <chrono>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace assertgen::bugs {

struct TriggerTest {
    std::string test_class;  // simple or qualified class name
    std::string test_method;
    std::string test_file;  // relative to both revision roots
    std::size_t failing_line = 0;  // 1-based line of the failing assertion

    friend bool operator==(const TriggerTest&, const TriggerTest&) = default;
};

struct BugCase {
    std::string bug_id;
    std::filesystem::path buggy_root;
    std::filesystem::path fixed_root;
    std::vector<TriggerTest> trigger_tests;
    std::vector<std::string> diff_changed_methods;  // `pkg.Owner#name(T1,T2)` or `pkg.Owner#name`
    std::optional<std::string> manual_focal;

    /// Throws Error(InvalidArgument) without trigger tests or with a missing root.
    void validate() const;
};

/// One case per line. Relative roots resolve against the manifest's directory.
/// Throws Error(MalformedRecord) naming the line.
std::vector<BugCase> load_bug_manifest(const std::filesystem::path& path);

enum class FocalStrategy { NameMatch, SubtokenOverlap, LastCall, DiffFallback, Manual };

std::string_view focal_strategy_name(FocalStrategy s) noexcept;

/// Lowercased camel-case, underscore and letter/digit pieces.
std::vector<std::string> subtokens(std::string_view identifier);

struct FocalMatch {
    java::MethodUnit method;
    FocalStrategy strategy = FocalStrategy::NameMatch;
};

/// Tries, in order: class-and-name match, most shared name subtokens, the
/// last call before the assertion that names a candidate method, the first
/// resolvable changed method of the fix, and the manual override. Without a
/// site, "before the assertion" means before the first assertion of the test.
/// Throws Error(NoFocalFound).
FocalMatch detect_focal_extended(const java::MethodUnit& test, std::span<const java::ClassInfo> candidate_classes,
                                 std::span<const std::string> diff_changed_methods,
                                 const std::optional<std::string>& manual_override,
                                 const std::optional<java::AssertionSite>& site = std::nullopt);

std::size_t line_of(std::string_view source, std::size_t offset);

/// The assertion of `test` whose lines cover `failing_line`.
/// Throws Error(SiteNotInTest) when the line lies outside the test method or
/// on no assertion statement of it, e.g. inside a helper.
java::AssertionSite locate_failing_site(std::string_view source, const java::MethodUnit& test,
                                        std::size_t failing_line);

/// Source with the site's bytes replaced by `generated`.
/// Throws Error(SiteNotInTest) unless the site lies within the test body.
std::string replace_failing_assertion(std::string_view source, const java::MethodUnit& test,
                                      const java::AssertionSite& site, std::string_view generated);

/// `text` with a `;` appended unless it already ends in `;` or `}`.
std::string as_statement(std::string_view text);

/// The trigger test's method in `source`. Throws Error(SiteNotInTest) if absent.
java::MethodUnit find_test_method(std::string_view source, const TriggerTest& trigger);

/// Parseable classes of the non-test sources under `root`, in path order.
std::vector<java::ClassInfo> load_candidate_classes(const std::filesystem::path& root);

struct PreparedTrigger {
    FocalMatch focal;
    corpus::DatasetSample sample;  // raw TestPlusFocal, failing assertion masked
};

/// Reads the trigger test from the fixed revision, masks its failing
/// assertion and attaches the extended-heuristics focal method.
PreparedTrigger prepare_trigger(const BugCase& bug, const TriggerTest& test,
                                std::span<const java::ClassInfo> candidate_classes);

struct ExecutionHooks {
    std::string compile_command;  // needs {root}
    std::string test_command;     // needs {root}, {test_class}, {test_method}
    std::chrono::milliseconds timeout{std::chrono::minutes(10)};

    /// Throws Error(InvalidArgument) when a template lacks a required variable.
    void validate() const;
};

/// Replaces {root}, {test_class} and {test_method} with shell-quoted values.
std::string expand_hook(std::string_view command_template, const std::map<std::string, std::string>& vars);

enum class TrialCategory { NotCompilable, FailsOnFixed, FailsOnlyOnBuggy, PassesOnBoth };

inline constexpr std::array kAllTrialCategories = {TrialCategory::NotCompilable, TrialCategory::FailsOnFixed,
                                                   TrialCategory::FailsOnlyOnBuggy, TrialCategory::PassesOnBoth};

std::string_view trial_category_name(TrialCategory c) noexcept;

/// The decision chain: no compile, then fixed run, then buggy run.
TrialCategory classify(bool compiles, bool passes_fixed, bool passes_buggy) noexcept;

struct TrialOutcome {
    std::string bug_id;
    TriggerTest test;
    TrialCategory category = TrialCategory::NotCompilable;
    std::string generated_assertion;
    std::string compile_log;
    std::vector<std::string> run_logs;
};

/// Patches the trigger test in both revisions (restored on return), then
/// compiles the fixed revision and runs the test on fixed and buggy.
/// Hook exit 0 is success, 1 is failure, anything else Error(HookCrash);
/// Error(HookTimeout) when a step exceeds the hook timeout.
TrialOutcome run_trial(const BugCase& bug, const TriggerTest& test, const std::string& generated,
                       const ExecutionHooks& hooks);

struct BugSummary {
    std::size_t bugs = 0;
    std::size_t bugs_found = 0;
    std::size_t trials = 0;
    std::map<TrialCategory, std::size_t> per_category;  // all four present
};

/// A bug is found when at least one of its trials fails only on buggy.
BugSummary aggregate_bugs(std::span<const TrialOutcome> trials);

io::Json trial_to_json(const TrialOutcome& t);
io::Json summary_to_json(const BugSummary& s);
std::string render_summary(const BugSummary& s);

}  // namespace assertgen::bugs
