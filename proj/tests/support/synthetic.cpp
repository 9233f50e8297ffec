#include "synthetic.hpp"

#include "assertgen/util/process.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unistd.h>

namespace assertgen::testing {

namespace fs = std::filesystem;
using java::AssertionKind;

TempDir::TempDir(const std::string& tag)
{
    static std::atomic<int> counter{0};
    path_ = fs::temp_directory_path() /
            ("assertgen-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
}

TempDir::~TempDir()
{
    std::error_code ec;
    fs::remove_all(path_, ec);
}

void write_text(const fs::path& path, const std::string& content)
{
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << content;
}

std::string read_text(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace {

struct FocalTemplate {
    const char* base;
    const char* return_type;
    const char* params;
    const char* body;
    const char* args;
};

constexpr std::array<FocalTemplate, 8> kFocals = {{
    {"add", "int", "int v", "{ count += v; return count; }", "3"},
    {"isEmpty", "boolean", "", "{ return items.isEmpty(); }", ""},
    {"label", "String", "", "{ return \"unit \" + count; }", ""},
    {"ratio", "double", "int a, int b",
     "{\n        if (b == 0) {\n            throw new IllegalStateException(\"zero\");\n        }\n"
     "        return (double) a / b;\n    }",
     "6, 3"},
    {"find", "Object", "String key", "{ return key.isEmpty() ? null : items; }", "\"k\""},
    {"last", "char", "String s", "{ return s.charAt(s.length() - 1); }", "\"abc\""},
    {"scale", "long", "long f", "{ return count * f + LIMIT; }", "2L"},
    {"tags", "List<String>", "", "{ return new ArrayList<>(items); }", ""},
}};

constexpr std::array<const char*, 4> kSuffixes = {"", "Value", "Item", "Now"};

struct FocalMethod {
    std::string name;
    const FocalTemplate* tpl;

    std::string call() const { return std::string("u.") + name + "(" + tpl->args + ")"; }
};

std::string capitalize(std::string s)
{
    s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
    return s;
}

class Writer {
public:
    Writer(std::uint64_t seed) : rng_(seed) {}

    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    // Appends assertion statements for result `r` of `call` and records them.
    void assertions(std::ostringstream& os, const std::string& call, GeneratedTest& rec)
    {
        int accepted = pick(0, 100) < 8 ? 0 : pick(1, pick(0, 3) == 0 ? 7 : 3);
        int rejected = pick(0, 3) == 0 ? pick(1, 2) : 0;
        std::vector<int> plan;
        for (int i = 0; i < accepted; ++i) {
            plan.push_back(pick(0, 8));
        }
        for (int i = 0; i < rejected; ++i) {
            plan.push_back(100 + pick(0, 2));
        }
        std::shuffle(plan.begin(), plan.end(), rng_);
        for (int p : plan) {
            os << "        ";
            switch (p) {
            case 0: os << "assertEquals(" << pick(0, 99) << ", r);"; rec.acceptable_kinds.push_back(AssertionKind::AssertEquals); break;
            case 1: os << "assertNotEquals(\"n " << pick(0, 9) << "\", r);"; rec.acceptable_kinds.push_back(AssertionKind::AssertNotEquals); break;
            case 2: os << "assertTrue(r != null);"; rec.acceptable_kinds.push_back(AssertionKind::AssertTrue); break;
            case 3: os << "assertFalse(r == other);"; rec.acceptable_kinds.push_back(AssertionKind::AssertFalse); break;
            case 4: os << "assertNull(other);"; rec.acceptable_kinds.push_back(AssertionKind::AssertNull); break;
            case 5: os << "assertNotNull(r);"; rec.acceptable_kinds.push_back(AssertionKind::AssertNotNull); break;
            case 6: os << "assertThrows(IllegalStateException.class, () -> " << call << ");"; rec.acceptable_kinds.push_back(AssertionKind::AssertThrows); break;
            case 7:
                os << "try {\n            " << call << ";\n            fail(\"expected\");\n        } catch (IllegalStateException e) {\n        }";
                rec.acceptable_kinds.push_back(AssertionKind::TryCatchFail);
                break;
            case 8: os << "Assert.assertEquals('" << static_cast<char>('a' + pick(0, 25)) << "', r);"; rec.acceptable_kinds.push_back(AssertionKind::AssertEquals); break;
            case 100: os << "assertEquals(\"message\", " << pick(0, 9) << ", r);"; ++rec.rejected; break;
            case 101: os << "assertTrue(\"message\", r != null);"; ++rec.rejected; break;
            default: os << "assertEquals(1.5, 2.5, 0.01);"; ++rec.rejected; break;
            }
            os << "\n";
        }
    }

    std::mt19937_64 rng_;
};

}  // namespace

GeneratedRepo write_synthetic_repo(const fs::path& root, int classes, std::uint64_t seed)
{
    Writer w(seed);
    GeneratedRepo repo;
    for (int i = 0; i < classes; ++i) {
        std::string pkg = "gen.p" + std::to_string(i % 5);
        std::string cls = "Unit" + std::to_string(i);
        std::string dir = "p" + std::to_string(i % 5);
        std::vector<int> order(kFocals.size());
        for (std::size_t k = 0; k < order.size(); ++k) {
            order[k] = static_cast<int>(k);
        }
        std::shuffle(order.begin(), order.end(), w.rng_);
        std::vector<FocalMethod> methods;
        for (int k = 0; k < 4; ++k) {
            const auto& tpl = kFocals[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])];
            methods.push_back({std::string(tpl.base) + kSuffixes[static_cast<std::size_t>(w.pick(0, 3))], &tpl});
        }

        std::ostringstream fs_;
        fs_ << "package " << pkg << ";\n\nimport java.util.*;\n\npublic class " << cls << " {\n"
            << "    private int count;\n    private final List<String> items = new ArrayList<>();\n"
            << "    static final long LIMIT = " << w.pick(1, 1000) << "L;\n\n"
            << "    public " << cls << "() {}\n\n";
        for (const auto& m : methods) {
            if (w.pick(0, 2) == 0) {
                fs_ << "    /** Computes " << m.name << ". */\n";
            }
            fs_ << "    public " << m.tpl->return_type << " " << m.name << "(" << m.tpl->params << ") " << m.tpl->body
                << "\n\n";
        }
        fs_ << "}\n";
        write_text(root / "src/main/java/gen" / dir / (cls + ".java"), fs_.str());

        std::ostringstream ts;
        ts << "package " << pkg << ";\n\nimport static org.junit.Assert.*;\n\nimport java.util.*;\nimport org.junit.Assert;\n"
           << "import org.junit.Test;\n\npublic class " << cls << "Test {\n";
        auto emit_test = [&](const std::string& name, const std::vector<const FocalMethod*>& calls,
                             std::optional<std::string> focal, corpus::FocalDetection how) {
            GeneratedTest rec{pkg, cls + "Test", name, std::move(focal), how, {}, 0};
            ts << "    @Test\n    public void " << name << "() {\n        " << cls << " u = new " << cls << "();\n"
               << "        Object other = null;\n";
            for (std::size_t c = 0; c < calls.size(); ++c) {
                ts << "        " << calls[c]->tpl->return_type << " " << (c == 0 ? "r" : "r" + std::to_string(c))
                   << " = " << calls[c]->call() << ";\n";
            }
            w.assertions(ts, calls[0]->call(), rec);
            ts << "    }\n\n";
            repo.tests.push_back(std::move(rec));
        };
        // name match; the second call does not change the outcome
        emit_test("test" + capitalize(methods[0].name), {&methods[0], &methods[1]}, methods[0].name,
                  corpus::FocalDetection::ClassAndNameMatch);
        emit_test("testScenario" + std::to_string(i), {&methods[1]}, methods[1].name,
                  corpus::FocalDetection::CallIntersection);
        if (i % 3 == 0) {
            emit_test("testMixed", {&methods[2], &methods[3]}, std::nullopt, corpus::FocalDetection::None);
        }
        ts << "    private int helper() { return 1; }\n}\n";
        write_text(root / "src/test/java/gen" / dir / (cls + "Test.java"), ts.str());
    }
    return repo;
}

}  // namespace assertgen::testing

namespace assertgen::testing {

namespace {

const char* kFlagTest = R"(package p;

import static org.junit.Assert.assertTrue;

import org.junit.Test;

public class FlagTest {
    @Test
    public void testToggle() {
        Flag flag = new Flag();
        boolean success = flag.toggle();
        assertTrue(success);
        check(flag.isSet());
    }

    private void check(boolean v) {
        assertTrue(v);
    }
}
)";

const char* kFlag = R"(package p;

public class Flag {
    private boolean set;

    public boolean toggle() {
        set = !set;
        return %s;
    }

    public boolean isSet() {
        return set;
    }
}
)";

std::size_t line_containing(const std::string& text, const std::string& needle)
{
    auto at = text.find(needle);
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(at), '\n'));
}

}  // namespace

BugFixture write_bug_fixture(const fs::path& dir, const std::string& bug_id)
{
    BugFixture f;
    f.test_source = kFlagTest;
    f.bug.bug_id = bug_id;
    f.bug.fixed_root = dir / bug_id / "fixed";
    f.bug.buggy_root = dir / bug_id / "buggy";
    const std::string test_file = "src/test/java/p/FlagTest.java";
    for (const auto& [root, ret] : {std::pair{f.bug.fixed_root, "set"}, std::pair{f.bug.buggy_root, "!set"}}) {
        write_text(root / test_file, f.test_source);
        char buf[512];
        std::snprintf(buf, sizeof buf, kFlag, ret);
        write_text(root / "src/main/java/p/Flag.java", buf);
        fs::create_directories(root / ".stub");
    }
    f.bug.trigger_tests.push_back({"p.FlagTest", "testToggle", test_file, line_containing(f.test_source, "assertTrue(success);")});
    f.bug.diff_changed_methods = {"p.Flag#toggle()"};
    f.helper_assert_line = line_containing(f.test_source, "assertTrue(v);");
    f.helper_call_line = line_containing(f.test_source, "check(flag.isSet());");
    return f;
}

void script_stub(const fs::path& root, const StubScript& script)
{
    auto dir = root / ".stub";
    for (const char* name : {"compile", "test", "expect", "sleep"}) {
        fs::remove(dir / name);
    }
    if (script.compile) {
        write_text(dir / "compile", std::to_string(*script.compile));
    }
    if (script.test) {
        write_text(dir / "test", std::to_string(*script.test));
    }
    if (script.expect) {
        write_text(dir / "expect", *script.expect);
    }
    if (script.sleep_seconds) {
        write_text(dir / "sleep", std::to_string(*script.sleep_seconds));
    }
}

bugs::ExecutionHooks stub_hooks(std::chrono::milliseconds timeout)
{
    const std::string hook = util::shell_quote(ASSERTGEN_FIXTURES_DIR "/bugs/stub_hook.sh");
    return {"sh " + hook + " compile {root}", "sh " + hook + " test {root} {test_class} {test_method}", timeout};
}

}  // namespace assertgen::testing
