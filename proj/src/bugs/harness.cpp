#include "assertgen/bugs/harness.hpp"

#include "assertgen/corpus/pairing.hpp"
#include "assertgen/corpus/scanner.hpp"
#include "assertgen/error.hpp"
#include "assertgen/util/process.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <set>
#include <sstream>

namespace fs = std::filesystem;

namespace assertgen::bugs {

void BugCase::validate() const
{
    if (trigger_tests.empty()) {
        throw Error(ErrorCode::InvalidArgument, bug_id + ": no trigger tests");
    }
    for (const auto& root : {buggy_root, fixed_root}) {
        if (!fs::is_directory(root)) {
            throw Error(ErrorCode::InvalidArgument, bug_id + ": revision root " + root.string() + " does not exist");
        }
    }
}

std::vector<BugCase> load_bug_manifest(const fs::path& path)
{
    auto base = path.parent_path();
    auto resolve = [&](const std::string& p) {
        fs::path r(p);
        return r.is_absolute() ? r : base / r;
    };
    std::vector<BugCase> out;
    std::size_t lineno = 0;
    for (const auto& j : io::read_jsonl(path)) {
        ++lineno;
        try {
            BugCase b;
            b.bug_id = j.at("bug_id").get<std::string>();
            b.buggy_root = resolve(j.at("buggy_root").get<std::string>());
            b.fixed_root = resolve(j.at("fixed_root").get<std::string>());
            for (const auto& t : j.at("trigger_tests")) {
                b.trigger_tests.push_back({t.at("test_class").get<std::string>(), t.at("test_method").get<std::string>(),
                                           t.at("test_file").get<std::string>(),
                                           t.at("failing_line").get<std::size_t>()});
            }
            if (j.contains("diff_changed_methods")) {
                b.diff_changed_methods = j["diff_changed_methods"].get<std::vector<std::string>>();
            }
            if (j.contains("manual_focal") && !j["manual_focal"].is_null()) {
                b.manual_focal = j["manual_focal"].get<std::string>();
            }
            out.push_back(std::move(b));
        } catch (const io::Json::exception& e) {
            throw Error(ErrorCode::MalformedRecord, path.string() + ": case " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

std::string_view focal_strategy_name(FocalStrategy s) noexcept
{
    switch (s) {
    case FocalStrategy::NameMatch: return "NameMatch";
    case FocalStrategy::SubtokenOverlap: return "SubtokenOverlap";
    case FocalStrategy::LastCall: return "LastCall";
    case FocalStrategy::DiffFallback: return "DiffFallback";
    case FocalStrategy::Manual: return "Manual";
    }
    return "?";
}

std::vector<std::string> subtokens(std::string_view id)
{
    std::vector<std::string> out;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) {
            out.push_back(cur);
            cur.clear();
        }
    };
    auto is_upper = [](char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; };
    auto is_lower = [](char c) { return std::islower(static_cast<unsigned char>(c)) != 0; };
    auto is_digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };
    for (std::size_t i = 0; i < id.size(); ++i) {
        char c = id[i];
        if (c == '_' || c == '$') {
            flush();
            continue;
        }
        if (i > 0 && !cur.empty()) {
            char prev = id[i - 1];
            bool boundary = (is_upper(c) && (is_lower(prev) || is_digit(prev))) ||
                            // HTTPRequest: the R starts a new word
                            (is_upper(c) && is_upper(prev) && i + 1 < id.size() && is_lower(id[i + 1])) ||
                            (is_digit(c) != is_digit(prev));
            if (boundary) {
                flush();
            }
        }
        cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    flush();
    return out;
}

namespace {

std::vector<const java::MethodUnit*> methods_of(std::span<const java::ClassInfo> classes, bool constructors)
{
    std::vector<const java::MethodUnit*> out;
    for (const auto& c : classes) {
        for (const auto& m : c.methods) {
            if (constructors || !m.is_constructor) {
                out.push_back(&m);
            }
        }
    }
    return out;
}

const java::MethodUnit* resolve_qualified(std::span<const java::ClassInfo> classes, std::string_view id)
{
    auto all = methods_of(classes, true);
    for (const auto* m : all) {
        if (m->qualified_id() == id) {
            return m;
        }
    }
    if (id.find('(') == std::string_view::npos) {
        for (const auto* m : all) {
            auto q = m->qualified_id();
            if (q.substr(0, q.find('(')) == id) {
                return m;
            }
        }
    }
    return nullptr;
}

}  // namespace

FocalMatch detect_focal_extended(const java::MethodUnit& test, std::span<const java::ClassInfo> candidate_classes,
                                 std::span<const std::string> diff_changed_methods,
                                 const std::optional<std::string>& manual_override,
                                 const std::optional<java::AssertionSite>& site)
{
    // focal class first so declaration order favours it
    std::vector<corpus::ClassRef> refs;
    for (const auto& c : candidate_classes) {
        refs.push_back({c.name, c.package});
    }
    std::vector<java::ClassInfo> ordered(candidate_classes.begin(), candidate_classes.end());
    const java::ClassInfo* focal_class = nullptr;
    if (auto ref = corpus::match_focal_class(test.owner_class, test.package, refs)) {
        auto it = std::find_if(ordered.begin(), ordered.end(), [&](const java::ClassInfo& c) {
            return c.name == ref->name && c.package == ref->package;
        });
        std::rotate(ordered.begin(), it, it + 1);
        focal_class = &ordered.front();
    }

    if (focal_class) {
        auto [m, how] = corpus::match_focal_method(test, focal_class->methods);
        if (m && how == corpus::FocalDetection::ClassAndNameMatch) {
            return {*m, FocalStrategy::NameMatch};
        }
    }

    auto candidates = methods_of(ordered, false);
    auto test_name = corpus::strip_test_affix(test.name).value_or(test.name);
    auto test_words = subtokens(test_name);
    std::set<std::string> wanted(test_words.begin(), test_words.end());
    const java::MethodUnit* best = nullptr;
    std::size_t best_count = 0;
    for (const auto* m : candidates) {
        auto words = subtokens(m->name);
        std::set<std::string> have(words.begin(), words.end());
        std::size_t common = static_cast<std::size_t>(std::count_if(
            have.begin(), have.end(), [&](const std::string& w) { return wanted.count(w) > 0; }));
        if (common > best_count) {
            best = m;
            best_count = common;
        }
    }
    if (best) {
        return {*best, FocalStrategy::SubtokenOverlap};
    }

    const auto& body = test.body_tokens;
    std::size_t stop = body.size();
    if (site) {
        stop = site->token_span.begin;
    } else if (auto sites = java::find_assertions(test); !sites.empty()) {
        stop = sites.front().token_span.begin;
    }
    for (std::size_t i = std::min(stop, body.size()); i-- > 0;) {
        if (body[i].kind != java::TokenKind::Identifier || i + 1 >= body.size() || !body[i + 1].is("(")) {
            continue;
        }
        if (i > 0 && body[i - 1].is("new")) {
            continue;
        }
        auto it = std::find_if(candidates.begin(), candidates.end(),
                               [&](const java::MethodUnit* m) { return m->name == body[i].text; });
        if (it != candidates.end()) {
            return {**it, FocalStrategy::LastCall};
        }
    }

    for (const auto& id : diff_changed_methods) {
        if (const auto* m = resolve_qualified(ordered, id)) {
            return {*m, FocalStrategy::DiffFallback};
        }
    }

    if (manual_override) {
        if (const auto* m = resolve_qualified(ordered, *manual_override)) {
            return {*m, FocalStrategy::Manual};
        }
        throw Error(ErrorCode::NoFocalFound,
                    test.qualified_id() + ": manual focal " + *manual_override + " is not among the candidates");
    }
    throw Error(ErrorCode::NoFocalFound, "no focal method for " + test.qualified_id());
}

std::size_t line_of(std::string_view source, std::size_t offset)
{
    offset = std::min(offset, source.size());
    return 1 + static_cast<std::size_t>(std::count(source.begin(), source.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

java::AssertionSite locate_failing_site(std::string_view source, const java::MethodUnit& test, std::size_t failing_line)
{
    auto first = line_of(source, test.source_span.first);
    auto last = line_of(source, test.source_span.second == 0 ? 0 : test.source_span.second - 1);
    if (failing_line < first || failing_line > last) {
        throw Error(ErrorCode::SiteNotInTest, "line " + std::to_string(failing_line) + " is outside " +
                                                  test.qualified_id() + " (lines " + std::to_string(first) + "-" +
                                                  std::to_string(last) + ")");
    }
    for (const auto& site : java::find_assertions(test)) {
        if (line_of(source, site.byte_span.first) <= failing_line &&
            failing_line <= line_of(source, site.byte_span.second - 1)) {
            return site;
        }
    }
    throw Error(ErrorCode::SiteNotInTest,
                "line " + std::to_string(failing_line) + " of " + test.qualified_id() + " holds no assertion statement");
}

std::string replace_failing_assertion(std::string_view source, const java::MethodUnit& test,
                                      const java::AssertionSite& site, std::string_view generated)
{
    if (test.body_tokens.empty() || site.byte_span.first < test.body_tokens.front().offset ||
        site.byte_span.second > test.body_tokens.back().end_offset() || site.byte_span.first >= site.byte_span.second) {
        throw Error(ErrorCode::SiteNotInTest, "assertion at byte " + std::to_string(site.byte_span.first) +
                                                  " is not inside " + test.qualified_id());
    }
    std::string out(source.substr(0, site.byte_span.first));
    out += generated;
    out += source.substr(site.byte_span.second);
    return out;
}

std::string as_statement(std::string_view text)
{
    std::string out(text);
    while (!out.empty() && std::isspace(static_cast<unsigned char>(out.back()))) {
        out.pop_back();
    }
    if (!out.empty() && out.back() != ';' && out.back() != '}') {
        out.push_back(';');
    }
    return out;
}

java::MethodUnit find_test_method(std::string_view source, const TriggerTest& trigger)
{
    std::string_view cls = trigger.test_class;
    std::string_view pkg;
    if (auto dot = cls.rfind('.'); dot != std::string_view::npos) {
        pkg = cls.substr(0, dot);
        cls = cls.substr(dot + 1);
    }
    for (auto& m : java::parse_methods(source)) {
        if (m.name == trigger.test_method && m.owner_class == cls && (pkg.empty() || m.package == pkg)) {
            return m;
        }
    }
    throw Error(ErrorCode::SiteNotInTest,
                trigger.test_class + "#" + trigger.test_method + " not found in " + trigger.test_file);
}

std::vector<java::ClassInfo> load_candidate_classes(const fs::path& root)
{
    std::vector<fs::path> files;
    for (const auto& e : fs::recursive_directory_iterator(root)) {
        if (e.is_regular_file() && e.path().extension() == ".java" &&
            !corpus::is_test_file(fs::relative(e.path(), root))) {
            files.push_back(e.path());
        }
    }
    std::sort(files.begin(), files.end());
    std::vector<java::ClassInfo> out;
    for (const auto& f : files) {
        try {
            auto unit = java::parse_compilation_unit(io::read_text(f));
            out.insert(out.end(), unit.classes.begin(), unit.classes.end());
        } catch (const Error& e) {
            if (e.code() != ErrorCode::ParseFailure && e.code() != ErrorCode::UnterminatedLiteral) {
                throw;
            }
        }
    }
    return out;
}

PreparedTrigger prepare_trigger(const BugCase& bug, const TriggerTest& test,
                                std::span<const java::ClassInfo> candidate_classes)
{
    auto source = io::read_text(bug.fixed_root / test.test_file);
    auto method = find_test_method(source, test);
    auto site = locate_failing_site(source, method, test.failing_line);
    auto focal = detect_focal_extended(method, candidate_classes, bug.diff_changed_methods, bug.manual_focal, site);
    auto sample = corpus::sample_for_site(method, &focal.method, site);
    sample.sample_id = bug.bug_id + "/" + method.qualified_id();
    sample.group_key = bug.bug_id;
    return {std::move(focal), std::move(sample)};
}

void ExecutionHooks::validate() const
{
    auto require = [](const std::string& tmpl, std::string_view what, std::initializer_list<std::string_view> vars) {
        for (auto v : vars) {
            if (tmpl.find("{" + std::string(v) + "}") == std::string::npos) {
                throw Error(ErrorCode::InvalidArgument,
                            std::string(what) + " command lacks {" + std::string(v) + "}: `" + tmpl + "`");
            }
        }
    };
    require(compile_command, "compile", {"root"});
    require(test_command, "test", {"root", "test_class", "test_method"});
    if (timeout.count() <= 0) {
        throw Error(ErrorCode::InvalidArgument, "hook timeout must be positive");
    }
}

std::string expand_hook(std::string_view tmpl, const std::map<std::string, std::string>& vars)
{
    std::string out;
    std::size_t i = 0;
    while (i < tmpl.size()) {
        if (tmpl[i] == '{') {
            auto close = tmpl.find('}', i);
            if (close != std::string_view::npos) {
                auto it = vars.find(std::string(tmpl.substr(i + 1, close - i - 1)));
                if (it != vars.end()) {
                    out += util::shell_quote(it->second);
                    i = close + 1;
                    continue;
                }
            }
        }
        out.push_back(tmpl[i++]);
    }
    return out;
}

std::string_view trial_category_name(TrialCategory c) noexcept
{
    switch (c) {
    case TrialCategory::NotCompilable: return "not compilable";
    case TrialCategory::FailsOnFixed: return "fails on fixed";
    case TrialCategory::FailsOnlyOnBuggy: return "fails only on buggy";
    case TrialCategory::PassesOnBoth: return "passes on both";
    }
    return "?";
}

TrialCategory classify(bool compiles, bool passes_fixed, bool passes_buggy) noexcept
{
    if (!compiles) {
        return TrialCategory::NotCompilable;
    }
    if (!passes_fixed) {
        return TrialCategory::FailsOnFixed;
    }
    return passes_buggy ? TrialCategory::PassesOnBoth : TrialCategory::FailsOnlyOnBuggy;
}

namespace {

// Rewrites a file for the lifetime of the object.
class ScopedPatch {
public:
    ScopedPatch(fs::path path, const std::string& content) : path_(std::move(path)), original_(io::read_text(path_))
    {
        io::write_text(path_, content);
    }
    ~ScopedPatch()
    {
        try {
            io::write_text(path_, original_);
        } catch (const Error& e) {
            std::fprintf(stderr, "assertgen: failed to restore %s: %s\n", path_.c_str(), e.what());
        }
    }
    ScopedPatch(const ScopedPatch&) = delete;
    ScopedPatch& operator=(const ScopedPatch&) = delete;

    const std::string& original() const { return original_; }

private:
    fs::path path_;
    std::string original_;
};

std::string patched_source(const fs::path& file, const TriggerTest& test, const std::string& generated)
{
    auto source = io::read_text(file);
    auto method = find_test_method(source, test);
    auto site = locate_failing_site(source, method, test.failing_line);
    return replace_failing_assertion(source, method, site, generated);
}

// true on exit 0, false on exit 1
bool run_hook(const std::string& command, const ExecutionHooks& hooks, std::string_view step, std::string& log)
{
    auto r = util::run_shell(command, hooks.timeout);
    log = r.output;
    if (r.timed_out) {
        throw Error(ErrorCode::HookTimeout, std::string(step) + " exceeded " + std::to_string(hooks.timeout.count()) +
                                                " ms: " + command);
    }
    if (r.signaled || (r.exit_code != 0 && r.exit_code != 1)) {
        throw Error(ErrorCode::HookCrash,
                    std::string(step) + (r.signaled ? " was killed by a signal" : " exited with " + std::to_string(r.exit_code)) +
                        ": " + command + "\n" + r.output.substr(0, 2000));
    }
    return r.exit_code == 0;
}

}  // namespace

TrialOutcome run_trial(const BugCase& bug, const TriggerTest& test, const std::string& generated,
                       const ExecutionHooks& hooks)
{
    hooks.validate();
    TrialOutcome out{bug.bug_id, test, TrialCategory::NotCompilable, generated, {}, {}};
    auto fixed_file = bug.fixed_root / test.test_file;
    auto buggy_file = bug.buggy_root / test.test_file;
    // compute both patches before touching either tree
    auto fixed_src = patched_source(fixed_file, test, generated);
    auto buggy_src = patched_source(buggy_file, test, generated);
    ScopedPatch fixed_patch(fixed_file, fixed_src);
    ScopedPatch buggy_patch(buggy_file, buggy_src);

    auto vars = [&](const fs::path& root) {
        return std::map<std::string, std::string>{
            {"root", root.string()}, {"test_class", test.test_class}, {"test_method", test.test_method}};
    };
    bool compiles = run_hook(expand_hook(hooks.compile_command, vars(bug.fixed_root)), hooks, "compile", out.compile_log);
    if (!compiles) {
        out.category = classify(false, false, false);
        return out;
    }
    std::string log;
    bool passes_fixed = run_hook(expand_hook(hooks.test_command, vars(bug.fixed_root)), hooks, "test on fixed", log);
    out.run_logs.push_back(log);
    if (!passes_fixed) {
        out.category = classify(true, false, false);
        return out;
    }
    bool passes_buggy = run_hook(expand_hook(hooks.test_command, vars(bug.buggy_root)), hooks, "test on buggy", log);
    out.run_logs.push_back(log);
    out.category = classify(true, true, passes_buggy);
    return out;
}

BugSummary aggregate_bugs(std::span<const TrialOutcome> trials)
{
    BugSummary s;
    for (auto c : kAllTrialCategories) {
        s.per_category[c] = 0;
    }
    std::map<std::string, bool> found;
    for (const auto& t : trials) {
        ++s.per_category[t.category];
        auto& f = found[t.bug_id];
        f = f || t.category == TrialCategory::FailsOnlyOnBuggy;
    }
    s.trials = trials.size();
    s.bugs = found.size();
    s.bugs_found = static_cast<std::size_t>(
        std::count_if(found.begin(), found.end(), [](const auto& kv) { return kv.second; }));
    return s;
}

io::Json trial_to_json(const TrialOutcome& t)
{
    return {{"bug_id", t.bug_id},
            {"test_class", t.test.test_class},
            {"test_method", t.test.test_method},
            {"category", trial_category_name(t.category)},
            {"generated_assertion", t.generated_assertion},
            {"compile_log", t.compile_log},
            {"run_logs", t.run_logs}};
}

io::Json summary_to_json(const BugSummary& s)
{
    io::Json cats = io::Json::object();
    for (const auto& [c, n] : s.per_category) {
        cats[std::string(trial_category_name(c))] = n;
    }
    return {{"bugs", s.bugs}, {"bugs_found", s.bugs_found}, {"trials", s.trials}, {"per_category", cats}};
}

std::string render_summary(const BugSummary& s)
{
    std::ostringstream out;
    char buf[128];
    for (auto c : kAllTrialCategories) {
        std::snprintf(buf, sizeof buf, "%-22s %6zu\n", std::string(trial_category_name(c)).c_str(),
                      s.per_category.at(c));
        out << buf;
    }
    std::snprintf(buf, sizeof buf, "%-22s %6zu\n%-22s %6zu / %zu\n", "trials", s.trials, "bugs found", s.bugs_found,
                  s.bugs);
    out << buf;
    return out.str();
}

}  // namespace assertgen::bugs
