#include "assertgen/abstraction/abstraction.hpp"
#include "assertgen/bugs/harness.hpp"
#include "assertgen/corpus/dataset.hpp"
#include "assertgen/corpus/records.hpp"
#include "assertgen/corpus/scanner.hpp"
#include "assertgen/corpus/split.hpp"
#include "assertgen/error.hpp"
#include "assertgen/eval/metrics.hpp"
#include "assertgen/predict/adapter.hpp"
#include "assertgen/predict/retrieval.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <thread>

namespace fs = std::filesystem;
using namespace assertgen;

namespace {

const std::map<std::string, corpus::TokenForm> kTokenForms = {{"raw", corpus::TokenForm::Raw},
                                                              {"abstract", corpus::TokenForm::Abstract}};
const std::map<std::string, corpus::Subset> kSubsets = {
    {"1", corpus::Subset::One}, {"5", corpus::Subset::UpToFive}, {"10", corpus::Subset::UpToTen}};
const std::map<std::string, int> kVariants = {{"both", 0}, {"test-only", 1}, {"test-focal", 2}};

struct AbstractionFlags {
    int max_input = 386;
    int max_output = 64;
    bool no_class_context = false;

    abstraction::AbstractionConfig config() const
    {
        abstraction::AbstractionConfig c{max_input, max_output, !no_class_context};
        c.validate();
        return c;
    }
};

void add_abstraction_flags(CLI::App* cmd, AbstractionFlags& f)
{
    cmd->add_option("--max-input-tokens", f.max_input, "input token budget")->capture_default_str();
    cmd->add_option("--max-output-tokens", f.max_output, "assertion token budget")->capture_default_str();
    cmd->add_flag("--no-class-context", f.no_class_context, "abstract without class members and types");
}

void require_file(const fs::path& p, const std::string& what)
{
    if (!fs::is_regular_file(p)) {
        throw Error(ErrorCode::Io, what + " " + p.string() + " does not exist");
    }
}

// --- build-corpus ---

struct BuildFlags {
    std::vector<std::string> corpora;
    std::vector<std::string> repos;
    std::string out;
    std::string subset = "5";
    std::size_t max_chars = 10000;
    std::string token_form = "raw";
    std::string variant = "both";
    std::vector<double> split = {0.8, 0.1, 0.1};
    std::uint64_t seed = 0;
    AbstractionFlags abs;
};

int run_build(const BuildFlags& f)
{
    std::vector<std::pair<std::string, fs::path>> repos;
    for (const auto& c : f.corpora) {
        if (!fs::is_directory(c)) {
            throw Error(ErrorCode::Io, "corpus directory " + c + " does not exist");
        }
        std::vector<fs::path> dirs;
        for (const auto& e : fs::directory_iterator(c)) {
            if (e.is_directory()) {
                dirs.push_back(e.path());
            }
        }
        std::sort(dirs.begin(), dirs.end());
        for (const auto& d : dirs) {
            repos.emplace_back(d.filename().string(), d);
        }
    }
    for (const auto& r : f.repos) {
        if (!fs::is_directory(r)) {
            throw Error(ErrorCode::Io, "repository " + r + " does not exist");
        }
        repos.emplace_back(fs::path(r).lexically_normal().filename().string(), r);
    }
    corpus::BuildOptions options;
    options.subset = kSubsets.at(f.subset);
    options.max_chars = f.max_chars;
    options.token_form = kTokenForms.at(f.token_form);
    options.abstraction = f.abs.config();
    if (int v = kVariants.at(f.variant); v != 0) {
        options.variant = v == 1 ? corpus::InputVariant::TestOnly : corpus::InputVariant::TestPlusFocal;
    }
    corpus::SplitSpec spec{f.split[0], f.split[1], f.split[2], f.seed};
    spec.validate();

    std::vector<corpus::TestFocalPair> pairs;
    std::size_t unparseable = 0;
    for (const auto& [id, root] : repos) {
        auto scan = corpus::scan_repository(root, id);
        unparseable += scan.unparseable_files.size();
        pairs.insert(pairs.end(), std::make_move_iterator(scan.pairs.begin()),
                     std::make_move_iterator(scan.pairs.end()));
    }
    if (pairs.empty()) {
        throw Error(ErrorCode::EmptyCorpus, "no test methods found in " + std::to_string(repos.size()) + " repositories");
    }
    auto built = corpus::build_dataset(std::move(pairs), options);
    built.stats.unparseable_files = unparseable;
    auto split = corpus::split_corpus(built.samples, spec);

    fs::path out(f.out);
    corpus::export_samples(split.train, out / "train.jsonl");
    corpus::export_samples(split.validation, out / "validation.jsonl");
    corpus::export_samples(split.test, out / "test.jsonl");
    auto stats = corpus::stats_to_json(built.stats);
    stats["repositories"] = repos.size();
    stats["splits"] = {{"train", split.train.size()}, {"validation", split.validation.size()}, {"test", split.test.size()}};
    io::write_json(out / "stats.json", stats);
    std::printf("%zu samples from %zu pairs: train %zu, validation %zu, test %zu\n", built.samples.size(),
                built.stats.input_pairs, split.train.size(), split.validation.size(), split.test.size());
    return 0;
}

// --- abstract ---

struct AbstractFlags {
    std::string in;
    std::string out;
    AbstractionFlags abs;
};

int run_abstract(const AbstractFlags& f)
{
    require_file(f.in, "input");
    auto config = f.abs.config();
    std::vector<corpus::DatasetSample> out;
    for (const auto& s : corpus::import_samples(f.in)) {
        if (s.token_form != corpus::TokenForm::Raw) {
            throw Error(ErrorCode::InvalidArgument, s.sample_id + ": already abstract");
        }
        auto a = corpus::to_abstract(s, nullptr, config);
        auto back = abstraction::deabstract(a.truth_assertion, *a.dictionary);
        if (back != s.truth_assertion) {
            throw Error(ErrorCode::UnknownAbstractToken, s.sample_id + ": truth does not survive the round trip");
        }
        out.push_back(std::move(a));
    }
    corpus::export_samples(out, f.out);
    std::printf("%zu samples abstracted\n", out.size());
    return 0;
}

// --- predict ---

struct PredictFlags {
    std::string in;
    std::string out;
    std::string backend = "retrieval";
    std::string train;
    int k = 10;
    std::string adapter_cmd;
    double adapter_timeout = 60.0;
    bool send_truth_hint = false;
    bool require_syntax = false;
    int jobs = 0;
};

predict::PredictorFactory make_factory(const PredictFlags& f, std::shared_ptr<predict::RetrievalIndex>& index)
{
    if (f.backend == "retrieval") {
        if (f.train.empty()) {
            throw Error(ErrorCode::InvalidArgument, "the retrieval backend needs --train");
        }
        require_file(f.train, "training file");
        auto train = corpus::import_samples(f.train);
        index = std::make_shared<predict::RetrievalIndex>(predict::RetrievalIndex::build(train));
        return [index] { return std::make_unique<predict::RetrievalPredictor>(*index); };
    }
    predict::AdapterOptions options{
        f.adapter_cmd, std::chrono::milliseconds(static_cast<long long>(f.adapter_timeout * 1000)), f.send_truth_hint};
    if (options.command.empty()) {
        throw Error(ErrorCode::BackendUnavailable, "no adapter command (--adapter-cmd or ASSERTGEN_ADAPTER_CMD)");
    }
    return [options] { return std::make_unique<predict::ExternalAdapter>(options); };
}

int jobs_or_default(int jobs)
{
    return jobs > 0 ? jobs : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

int run_predict(const PredictFlags& f)
{
    require_file(f.in, "input");
    auto samples = corpus::import_samples(f.in);
    std::shared_ptr<predict::RetrievalIndex> index;
    auto factory = make_factory(f, index);
    bool require_syntax = f.require_syntax || f.backend == "external";
    auto predictions = predict::predict_all(samples, f.k, factory, jobs_or_default(f.jobs), require_syntax);
    predict::export_predictions(predictions, f.out);
    std::size_t dropped = 0;
    for (const auto& p : predictions) {
        dropped += p.dropped.size();
    }
    std::printf("%zu predictions written, %zu candidates dropped\n", predictions.size(), dropped);
    return 0;
}

// --- evaluate ---

struct EvaluateFlags {
    std::string predictions;
    std::string truths;
    std::vector<int> ks = {1, 5, 10};
    std::string out;
};

int run_evaluate(const EvaluateFlags& f)
{
    require_file(f.predictions, "predictions");
    require_file(f.truths, "truths");
    auto predictions = predict::import_predictions(f.predictions);
    auto samples = corpus::import_samples(f.truths);
    auto refs = eval::references_from_samples(samples);
    auto report = eval::evaluate(predictions, refs, f.ks);
    if (!f.out.empty()) {
        io::write_json(f.out, eval::report_to_json(report));
    }
    std::cout << eval::render_table(report);
    return 0;
}

// --- bug-eval ---

struct BugEvalFlags {
    std::string manifest;
    std::string out;
    std::string compile_cmd;
    std::string test_cmd;
    double hook_timeout = 600.0;
    PredictFlags predict;
};

int run_bug_eval(BugEvalFlags f)
{
    require_file(f.manifest, "manifest");
    bugs::ExecutionHooks hooks{f.compile_cmd, f.test_cmd,
                               std::chrono::milliseconds(static_cast<long long>(f.hook_timeout * 1000))};
    hooks.validate();
    auto cases = bugs::load_bug_manifest(f.manifest);
    for (const auto& c : cases) {
        c.validate();
    }
    std::shared_ptr<predict::RetrievalIndex> index;
    auto backend = make_factory(f.predict, index)();
    bool require_syntax = f.predict.require_syntax || f.predict.backend == "external";

    std::vector<bugs::TrialOutcome> trials;
    io::Json skipped = io::Json::array();
    for (const auto& bug : cases) {
        auto candidates = bugs::load_candidate_classes(bug.fixed_root);
        for (const auto& trigger : bug.trigger_tests) {
            auto where = bug.bug_id + " " + trigger.test_class + "#" + trigger.test_method;
            std::optional<bugs::PreparedTrigger> prepared;
            try {
                prepared = bugs::prepare_trigger(bug, trigger, candidates);
            } catch (const Error& e) {
                if (e.code() != ErrorCode::SiteNotInTest && e.code() != ErrorCode::NoFocalFound) {
                    throw;
                }
                skipped.push_back({{"bug_id", bug.bug_id}, {"test", where}, {"reason", e.what()}});
                continue;
            }
            auto prediction = predict::predict_top_k(prepared->sample, f.predict.k, *backend, require_syntax);
            if (prediction.candidates.empty()) {
                skipped.push_back({{"bug_id", bug.bug_id}, {"test", where}, {"reason", "no candidate assertion"}});
                continue;
            }
            for (const auto& c : prediction.candidates) {
                trials.push_back(bugs::run_trial(bug, trigger, bugs::as_statement(c.text), hooks));
            }
        }
    }
    auto summary = bugs::aggregate_bugs(trials);
    if (!f.out.empty()) {
        io::Json report;
        report["summary"] = bugs::summary_to_json(summary);
        io::Json t = io::Json::array();
        for (const auto& trial : trials) {
            t.push_back(bugs::trial_to_json(trial));
        }
        report["trials"] = std::move(t);
        report["skipped"] = std::move(skipped);
        io::write_json(f.out, report);
    }
    std::cout << bugs::render_summary(summary);
    return 0;
}

// --- export-prompts ---

struct PromptFlags {
    std::string in;
    std::string out;
};

int run_export_prompts(const PromptFlags& f)
{
    require_file(f.in, "input");
    auto samples = corpus::import_samples(f.in);
    std::vector<corpus::DatasetSample> with_focal;
    for (auto& s : samples) {
        if (s.input_variant == corpus::InputVariant::TestPlusFocal) {
            with_focal.push_back(std::move(s));
        }
    }
    corpus::export_prompts(with_focal, f.out);
    std::printf("%zu prompts written\n", with_focal.size());
    return 0;
}

void add_predict_flags(CLI::App* cmd, PredictFlags& f)
{
    cmd->add_option("--backend", f.backend, "retrieval or external")
        ->check(CLI::IsMember({"retrieval", "external"}))
        ->capture_default_str();
    cmd->add_option("--train", f.train, "training samples for the retrieval index");
    cmd->add_option("-k,--k", f.k, "candidates per sample")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--adapter-cmd", f.adapter_cmd, "adapter command line")->envname("ASSERTGEN_ADAPTER_CMD");
    cmd->add_option("--adapter-timeout", f.adapter_timeout, "seconds per adapter request")
        ->envname("ASSERTGEN_ADAPTER_TIMEOUT")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_flag("--send-truth-hint", f.send_truth_hint, "include the truth in adapter requests (loopback tests)");
    cmd->add_flag("--require-syntax", f.require_syntax, "drop candidates that are not Java statements");
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Assertion generation pipeline: corpus, abstraction, prediction, evaluation"};
    app.set_config("--config", "", "INI/TOML file with option defaults, one [section] per subcommand");
    app.require_subcommand(1);

    BuildFlags build;
    auto* build_cmd = app.add_subcommand("build-corpus", "scan repositories and write split datasets");
    build_cmd->add_option("--corpus", build.corpora, "directory whose subdirectories are repositories");
    build_cmd->add_option("--repo", build.repos, "single repository directory");
    build_cmd->add_option("-o,--out", build.out, "output directory")->required();
    build_cmd->add_option("--subset", build.subset, "max assertions per test: 1, 5 or 10")
        ->check(CLI::IsMember({"1", "5", "10"}))
        ->capture_default_str();
    build_cmd->add_option("--max-chars", build.max_chars, "test length cap in characters")->capture_default_str();
    build_cmd->add_option("--token-form", build.token_form, "raw or abstract")
        ->check(CLI::IsMember({"raw", "abstract"}))
        ->capture_default_str();
    build_cmd->add_option("--variant", build.variant, "both, test-only or test-focal")
        ->check(CLI::IsMember({"both", "test-only", "test-focal"}))
        ->capture_default_str();
    build_cmd->add_option("--split", build.split, "train,validation,test fractions")
        ->delimiter(',')
        ->expected(3)
        ->capture_default_str();
    build_cmd->add_option("--seed", build.seed, "split seed")->capture_default_str();
    add_abstraction_flags(build_cmd, build.abs);

    AbstractFlags abs;
    auto* abs_cmd = app.add_subcommand("abstract", "convert a raw dataset file to abstract form");
    abs_cmd->add_option("-i,--in", abs.in, "raw samples")->required();
    abs_cmd->add_option("-o,--out", abs.out, "abstract samples")->required();
    add_abstraction_flags(abs_cmd, abs.abs);

    PredictFlags pred;
    auto* pred_cmd = app.add_subcommand("predict", "top-k assertion candidates for each sample");
    pred_cmd->add_option("-i,--in", pred.in, "samples to predict")->required();
    pred_cmd->add_option("-o,--out", pred.out, "prediction file")->required();
    pred_cmd->add_option("-j,--jobs", pred.jobs, "workers (default: all cores)");
    add_predict_flags(pred_cmd, pred);

    EvaluateFlags ev;
    auto* ev_cmd = app.add_subcommand("evaluate", "score predictions against dataset truths");
    ev_cmd->add_option("-p,--predictions", ev.predictions, "prediction file")->required();
    ev_cmd->add_option("-t,--truths", ev.truths, "dataset samples")->required();
    ev_cmd->add_option("--ks", ev.ks, "k values for top-k accuracy")->delimiter(',')->capture_default_str();
    ev_cmd->add_option("-o,--out", ev.out, "JSON report");

    BugEvalFlags bug;
    auto* bug_cmd = app.add_subcommand("bug-eval", "replace failing assertions and run them on buggy and fixed code");
    bug_cmd->add_option("-m,--manifest", bug.manifest, "bug case manifest (JSON lines)")->required();
    bug_cmd->add_option("--compile-cmd", bug.compile_cmd, "compile hook template using {root}")->required();
    bug_cmd->add_option("--test-cmd", bug.test_cmd, "test hook template using {root} {test_class} {test_method}")
        ->required();
    bug_cmd->add_option("--hook-timeout", bug.hook_timeout, "seconds per hook step")
        ->envname("ASSERTGEN_HOOK_TIMEOUT")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    bug_cmd->add_option("-o,--out", bug.out, "JSON report");
    bug.predict.k = 1;
    add_predict_flags(bug_cmd, bug.predict);

    PromptFlags prompts;
    auto* prompt_cmd = app.add_subcommand("export-prompts", "chat prompts for test-plus-focal samples");
    prompt_cmd->add_option("-i,--in", prompts.in, "raw samples")->required();
    prompt_cmd->add_option("-o,--out", prompts.out, "prompt file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (build_cmd->parsed()) {
            if (build.corpora.empty() && build.repos.empty()) {
                throw Error(ErrorCode::InvalidArgument, "give --corpus or --repo");
            }
            return run_build(build);
        }
        if (abs_cmd->parsed()) {
            return run_abstract(abs);
        }
        if (pred_cmd->parsed()) {
            return run_predict(pred);
        }
        if (ev_cmd->parsed()) {
            return run_evaluate(ev);
        }
        if (bug_cmd->parsed()) {
            return run_bug_eval(bug);
        }
        if (prompt_cmd->parsed()) {
            return run_export_prompts(prompts);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "assertgen %s: %s\n", app.get_subcommands().front()->get_name().c_str(), e.what());
        return 1;
    }
    return 0;
}
