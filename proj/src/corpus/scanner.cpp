#include "assertgen/corpus/scanner.hpp"

#include "assertgen/error.hpp"
#include "assertgen/io/jsonl.hpp"
#include "assertgen/java/lexer.hpp"

#include <algorithm>
#include <map>

namespace assertgen::corpus {

namespace fs = std::filesystem;

namespace {

struct SourceFile {
    fs::path relative;
    bool test = false;
    std::optional<java::CompilationUnit> unit;  // empty when parsing failed
    std::string package_guess;
};

// `package a.b;` from the raw token stream of a file that failed to parse.
std::string guess_package(std::string_view source)
{
    try {
        auto toks = java::tokenize(source);
        if (toks.empty() || toks[0].text != "package") {
            return "";
        }
        std::string pkg;
        for (std::size_t i = 1; i < toks.size() && toks[i].text != ";"; ++i) {
            pkg += toks[i].text;
        }
        return pkg;
    } catch (const Error&) {
        return "";
    }
}

void append_unique(std::vector<std::string>& out, const std::string& s)
{
    if (std::find(out.begin(), out.end(), s) == out.end()) {
        out.push_back(s);
    }
}

void add_context(abstraction::ClassContext& ctx, const java::CompilationUnit& unit, const java::ClassInfo& cls)
{
    for (const auto& c : unit.classes) {
        append_unique(ctx.type_names, c.name);
    }
    for (const auto& f : cls.field_names) {
        append_unique(ctx.field_names, f);
    }
    for (const auto& m : cls.methods) {
        if (!m.is_constructor) {
            append_unique(ctx.method_names, m.name);
        }
    }
}

}  // namespace

bool is_test_file(const fs::path& relative_path)
{
    for (const auto& part : relative_path.parent_path()) {
        if (part == "test" || part == "tests") {
            return true;
        }
    }
    auto stem = relative_path.stem().string();
    return stem.starts_with("Test") || stem.ends_with("Test") || stem.ends_with("Tests");
}

ScanResult scan_repository(const fs::path& root, const std::string& repo_id)
{
    if (!fs::is_directory(root)) {
        throw Error(ErrorCode::Io, root.string() + " is not a directory");
    }
    std::vector<fs::path> paths;
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
        if (entry.is_regular_file() && entry.path().extension() == ".java") {
            paths.push_back(entry.path());
        }
    }
    std::sort(paths.begin(), paths.end());

    ScanResult out;
    std::vector<SourceFile> files;
    for (const auto& p : paths) {
        SourceFile f;
        f.relative = fs::relative(p, root);
        f.test = is_test_file(f.relative);
        auto source = io::read_text(p);
        try {
            f.unit = java::parse_compilation_unit(source);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::ParseFailure && e.code() != ErrorCode::UnterminatedLiteral) {
                throw;
            }
            f.package_guess = guess_package(source);
            out.unparseable_files.push_back(f.relative);
        }
        files.push_back(std::move(f));
    }

    // Focal candidates: classes of non-test files. Unparsed files contribute
    // their file stem so that a pairing with them can be recorded and dropped.
    std::vector<ClassRef> candidates;
    std::map<std::pair<std::string, std::string>, std::pair<std::size_t, std::size_t>> where;  // -> (file, class)
    constexpr std::size_t unparsed = static_cast<std::size_t>(-1);
    for (std::size_t fi = 0; fi < files.size(); ++fi) {
        const auto& f = files[fi];
        if (f.test) {
            continue;
        }
        if (!f.unit) {
            ClassRef ref{f.relative.stem().string(), f.package_guess};
            candidates.push_back(ref);
            where[{ref.package, ref.name}] = {fi, unparsed};
            continue;
        }
        for (std::size_t ci = 0; ci < f.unit->classes.size(); ++ci) {
            ClassRef ref{f.unit->classes[ci].name, f.unit->classes[ci].package};
            candidates.push_back(ref);
            where.emplace(std::pair{ref.package, ref.name}, std::pair{fi, ci});
        }
    }

    for (const auto& f : files) {
        if (!f.test || !f.unit) {
            continue;
        }
        for (const auto& cls : f.unit->classes) {
            auto focal_ref = match_focal_class(cls.name, cls.package, candidates);
            const java::CompilationUnit* focal_unit = nullptr;
            const java::ClassInfo* focal_cls = nullptr;
            bool focal_parsed = true;
            if (focal_ref) {
                auto [fi, ci] = where.at({focal_ref->package, focal_ref->name});
                if (ci == unparsed) {
                    focal_parsed = false;
                } else {
                    focal_unit = &*files[fi].unit;
                    focal_cls = &focal_unit->classes[ci];
                }
            }
            abstraction::ClassContext ctx;
            add_context(ctx, *f.unit, cls);
            if (focal_cls) {
                add_context(ctx, *focal_unit, *focal_cls);
            }
            for (const auto& m : cls.methods) {
                if (m.owner_class != cls.name || !is_test_method(m)) {
                    continue;
                }
                TestFocalPair pair;
                pair.test = m;
                pair.repo_id = repo_id;
                pair.classes_parsed = focal_parsed;
                pair.context = ctx;
                if (focal_cls) {
                    auto [focal, how] = match_focal_method(m, focal_cls->methods);
                    pair.focal = std::move(focal);
                    pair.focal_detection = how;
                }
                out.pairs.push_back(std::move(pair));
            }
        }
    }
    return out;
}

}  // namespace assertgen::corpus
