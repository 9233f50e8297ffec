#include "assertgen/error.hpp"
#include "assertgen/eval/metrics.hpp"
#include "assertgen/java/lexer.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <unordered_map>

using assertgen::Error;
using assertgen::ErrorCode;
using assertgen::java::AssertionKind;
using namespace assertgen::eval;
using assertgen::predict::Prediction;

namespace {

std::vector<std::string> toks(const std::string& text)
{
    return assertgen::java::texts(assertgen::java::tokenize(text));
}

Reference ref(const std::string& id, const std::string& truth)
{
    return {id, toks(truth), assertgen::java::assertion_type_of(truth)};
}

Prediction pred(const std::string& id, std::vector<std::string> texts)
{
    Prediction p{id, {}, "test", {}};
    double score = 1.0;
    for (auto& t : texts) {
        p.candidates.push_back({std::move(t), score});
        score /= 2;
    }
    return p;
}

// BLEU written straight from the definition: joined-string n-gram keys,
// product of precisions, no logs.
double bleu_oracle(const std::vector<std::vector<std::string>>& hyps,
                   const std::vector<std::vector<std::string>>& refs)
{
    double m[4] = {0, 0, 0, 0};
    double t[4] = {0, 0, 0, 0};
    double c = 0;
    double r = 0;
    for (std::size_t s = 0; s < hyps.size(); ++s) {
        c += static_cast<double>(hyps[s].size());
        r += static_cast<double>(refs[s].size());
        for (std::size_t n = 1; n <= 4; ++n) {
            auto count = [n](const std::vector<std::string>& v) {
                std::unordered_map<std::string, int> out;
                for (std::size_t i = 0; i + n <= v.size(); ++i) {
                    std::string key;
                    for (std::size_t j = i; j < i + n; ++j) {
                        key += v[j] + '\x1f';
                    }
                    out[key]++;
                }
                return out;
            };
            auto h = count(hyps[s]);
            auto g = count(refs[s]);
            for (auto& [key, cnt] : h) {
                t[n - 1] += cnt;
                m[n - 1] += std::min(cnt, g.count(key) ? g[key] : 0);
            }
        }
    }
    if (c == 0) {
        return 0.0;
    }
    double product = m[0] / t[0];
    for (int n = 1; n < 4; ++n) {
        product *= (m[n] + 1) / (t[n] + 1);
    }
    double bp = c > r ? 1.0 : std::exp(1 - r / c);
    return bp * std::pow(product, 0.25);
}

void expect_code(ErrorCode code, const std::function<void()>& f)
{
    try {
        f();
        FAIL() << "expected " << assertgen::error_code_name(code);
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), code) << e.what();
    }
}

}  // namespace

TEST(ExactMatch, Examples)
{
    EXPECT_TRUE(exact_match("assertEquals( res , 'c' );", toks("assertEquals(res,'c');")));
    EXPECT_FALSE(exact_match("assertEquals(res,'d');", toks("assertEquals(res,'c');")));
    EXPECT_FALSE(exact_match("assertTrue(list.isEmpty())", toks("assertEquals(0, list.size());")));
    EXPECT_TRUE(exact_match("assertNull(x)", toks("assertNull(x);")));
    EXPECT_FALSE(exact_match("assertEquals(\"abc, x);", toks("assertEquals(\"abc\", x);")));
    for (const std::string s : {"assertTrue(a.b().c(1, 2));", "try { f(); fail(); } catch (E e) {}",
                                "assertThrows(X.class, () -> f());"}) {
        EXPECT_TRUE(exact_match(s, toks(s))) << s;
    }
}

TEST(TopK, RankCounting)
{
    std::vector<Reference> refs = {ref("a", "assertTrue(x);"), ref("b", "assertNull(y);")};
    std::vector<Prediction> preds = {
        pred("b", {}),
        pred("a", {"assertFalse(x);", "assertTrue(y);", "assertTrue( x )", "assertTrue(z);"}),
    };
    std::vector<int> ks = {1, 2, 3, 10};
    auto acc = top_k_accuracy(preds, refs, ks);
    EXPECT_DOUBLE_EQ(acc[1], 0.0);
    EXPECT_DOUBLE_EQ(acc[2], 0.0);
    EXPECT_DOUBLE_EQ(acc[3], 0.5);
    EXPECT_DOUBLE_EQ(acc[10], 0.5);

    expect_code(ErrorCode::MismatchedIds, [&] { top_k_accuracy(std::span(preds).first(1), refs, ks); });
    auto renamed = preds;
    renamed[0].sample_id = "c";
    expect_code(ErrorCode::MismatchedIds, [&] { top_k_accuracy(renamed, refs, ks); });
    expect_code(ErrorCode::EmptyCorpus, [&] { top_k_accuracy({}, {}, ks); });
}

TEST(TopK, BruteForceRecount)
{
    std::mt19937 rng(5);
    const std::vector<std::string> pool = {"assertTrue(a);", "assertTrue(b);", "assertNull(a);",
                                           "assertEquals(1, a);", "assertFalse(a);", "assertNotNull(b);"};
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<int> len(0, 10);
    std::vector<Reference> refs;
    std::vector<Prediction> preds;
    for (int i = 0; i < 20; ++i) {
        auto id = "s" + std::to_string(i);
        refs.push_back(ref(id, pool[pick(rng)]));
        std::vector<std::string> cands;
        for (int n = len(rng); n > 0; --n) {
            cands.push_back(pool[pick(rng)]);
        }
        preds.push_back(pred(id, cands));
    }
    std::vector<int> ks = {1, 5, 10};
    auto acc = top_k_accuracy(preds, refs, ks);
    for (int k : ks) {
        int hits = 0;
        for (int i = 0; i < 20; ++i) {
            bool found = false;
            for (int r = 0; r < k && r < static_cast<int>(preds[i].candidates.size()); ++r) {
                // truth and pool entries are identical strings, compare directly
                found |= toks(preds[i].candidates[r].text) == refs[i].tokens;
            }
            hits += found;
        }
        EXPECT_DOUBLE_EQ(acc[k], hits / 20.0) << k;
    }
}

TEST(Bleu, Examples)
{
    std::vector<std::vector<std::string>> a = {{"a", "b", "c", "d"}, {"x", "y"}};
    EXPECT_DOUBLE_EQ(bleu(a, a), 1.0);
    EXPECT_DOUBLE_EQ(bleu(std::vector<std::vector<std::string>>{{"p"}}, std::vector<std::vector<std::string>>{{"q"}}),
                     0.0);

    // p1 = 3/4, p2 = 3/4, p3 = 2/3, p4 = 1/2, equal lengths
    std::vector<std::vector<std::string>> h = {{"a", "b", "c", "d"}};
    std::vector<std::vector<std::string>> r = {{"a", "b", "c", "e"}};
    EXPECT_NEAR(bleu(h, r), std::pow(0.75 * 0.75 * (2.0 / 3) * 0.5, 0.25), 1e-12);

    // brevity: c = 2, r = 4
    std::vector<std::vector<std::string>> shorter = {{"a", "b"}};
    std::vector<std::vector<std::string>> longer = {{"a", "b", "c", "d"}};
    EXPECT_NEAR(bleu(shorter, longer), std::exp(1 - 2.0) * std::pow(1.0 * (2.0 / 2) * 1 * 1, 0.25), 1e-12);

    EXPECT_DOUBLE_EQ(bleu(std::vector<std::vector<std::string>>{{}}, longer), 0.0);
    expect_code(ErrorCode::EmptyCorpus, [] { bleu({}, {}); });
    expect_code(ErrorCode::InvalidArgument, [&] { bleu(a, longer); });
}

TEST(Bleu, AgreesWithOracle)
{
    std::mt19937 rng(17);
    const std::vector<std::string> vocab = {"assertEquals", "(", ")", ",", ";", "x", "y", "1", "."};
    std::uniform_int_distribution<std::size_t> word(0, vocab.size() - 1);
    std::uniform_int_distribution<int> len(0, 14);
    for (int round = 0; round < 40; ++round) {
        std::vector<std::vector<std::string>> hyps(1 + static_cast<std::size_t>(round % 4));
        std::vector<std::vector<std::string>> refs(hyps.size());
        for (std::size_t s = 0; s < hyps.size(); ++s) {
            for (int n = len(rng); n > 0; --n) {
                hyps[s].push_back(vocab[word(rng)]);
            }
            for (int n = 1 + len(rng); n > 0; --n) {
                refs[s].push_back(vocab[word(rng)]);
            }
        }
        double got = bleu(hyps, refs);
        EXPECT_NEAR(got, bleu_oracle(hyps, refs), 1e-9);
        EXPECT_GE(got, 0.0);
        EXPECT_LE(got, 1.0);
        EXPECT_DOUBLE_EQ(bleu(refs, refs), 1.0);
    }
}

TEST(Types, ConfusionFixture)
{
    std::vector<Reference> refs = {ref("1", "assertTrue(a);"), ref("2", "assertTrue(b);"), ref("3", "assertTrue(c);")};
    std::vector<Prediction> preds = {pred("1", {"assertTrue(a);"}), pred("2", {"assertTrue(x);"}),
                                     pred("3", {"assertFalse(c);"})};
    auto t = type_prf(preds, refs);
    EXPECT_DOUBLE_EQ(t.per_kind[AssertionKind::AssertTrue].recall, 2.0 / 3);
    EXPECT_DOUBLE_EQ(t.per_kind[AssertionKind::AssertTrue].precision, 1.0);
    EXPECT_DOUBLE_EQ(t.per_kind[AssertionKind::AssertTrue].f1, 0.8);
    EXPECT_EQ(t.per_kind[AssertionKind::AssertFalse].support, 0u);
    EXPECT_EQ(t.per_kind[AssertionKind::AssertFalse].predicted, 1u);
    // only AssertTrue has support
    EXPECT_DOUBLE_EQ(t.macro_precision, 1.0);
    EXPECT_DOUBLE_EQ(t.macro_recall, 2.0 / 3);
    EXPECT_DOUBLE_EQ(t.micro_precision, t.micro_recall);
    EXPECT_DOUBLE_EQ(t.type_accuracy, 2.0 / 3);

    std::vector<Prediction> right = {pred("1", {"assertTrue(q);"}), pred("2", {"assertTrue(q);"}),
                                     pred("3", {"assertTrue(q);"})};
    auto all_right = type_prf(right, refs);
    EXPECT_DOUBLE_EQ(all_right.macro_f1, 1.0);
}

TEST(Types, NoneIsAWrongLabel)
{
    std::vector<Reference> refs = {ref("1", "assertNull(a);"), ref("2", "assertNull(b);")};
    std::vector<Prediction> preds = {pred("1", {"assertThat(a, is(b));"}), pred("2", {})};
    auto t = type_prf(preds, refs);
    EXPECT_EQ(t.unrecognized_predictions, 2u);
    EXPECT_DOUBLE_EQ(t.per_kind[AssertionKind::AssertNull].recall, 0.0);
    EXPECT_DOUBLE_EQ(t.per_kind[AssertionKind::AssertNull].f1, 0.0);
    EXPECT_DOUBLE_EQ(t.type_accuracy, 0.0);
}

TEST(Conditional, ManualCount)
{
    // AssertEquals truths: s0..s5. Type right on s0..s4, of those exact on s0, s1, s2.
    std::vector<Reference> refs;
    std::vector<Prediction> preds;
    auto add = [&](const std::string& truth, const std::string& guess) {
        auto id = "s" + std::to_string(refs.size());
        refs.push_back(ref(id, truth));
        preds.push_back(pred(id, {guess}));
    };
    add("assertEquals(1, a);", "assertEquals(1, a);");
    add("assertEquals(2, a);", "assertEquals(2,a)");
    add("assertEquals(3, a);", "assertEquals(3, a);");
    add("assertEquals(4, a);", "assertEquals(5, a);");
    add("assertEquals(6, a);", "assertEquals(a, 6);");
    add("assertEquals(7, a);", "assertTrue(a == 7);");
    add("assertNull(b);", "assertNull(b);");
    add("assertNull(c);", "assertNotNull(c);");
    add("assertTrue(d);", "assertFalse(d);");
    add("assertFalse(e);", "assertTrue(e);");
    EXPECT_DOUBLE_EQ(*conditional_accuracy(preds, refs, AssertionKind::AssertEquals), 3.0 / 5);
    EXPECT_DOUBLE_EQ(*conditional_accuracy(preds, refs, AssertionKind::AssertNull), 1.0);
    EXPECT_FALSE(conditional_accuracy(preds, refs, AssertionKind::AssertTrue).has_value());
    EXPECT_FALSE(conditional_accuracy(preds, refs, AssertionKind::AssertThrows).has_value());
}

TEST(Syntax, DirectCount)
{
    std::vector<Prediction> preds;
    for (int i = 0; i < 8; ++i) {
        preds.push_back(pred("g" + std::to_string(i), {"assertEquals(" + std::to_string(i) + ", x);"}));
    }
    preds.push_back(pred("b1", {"assertEquals(", "assertTrue(x);"}));
    preds.push_back(pred("b2", {}));
    EXPECT_DOUBLE_EQ(syntactic_correctness_rate(preds), 0.8);
    EXPECT_DOUBLE_EQ(syntactic_correctness_rate(std::span(preds).first(8)), 1.0);
}

TEST(Report, InvariantsOnRandomFixtures)
{
    std::mt19937 rng(99);
    const std::vector<std::string> pool = {"assertTrue(a);", "assertFalse(a);", "assertNull(a);",
                                           "assertEquals(1, a);", "assertEquals(2, a);", "assertThat(a);",
                                           "assertNotNull(a", "try { f(); fail(); } catch (E e) {}"};
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<int> len(0, 12);
    std::vector<int> ks = {1, 5, 10};
    for (int round = 0; round < 50; ++round) {
        std::vector<Reference> refs;
        std::vector<Prediction> preds;
        for (int i = 0; i < 30; ++i) {
            auto id = std::to_string(i);
            std::string truth;
            do {
                truth = pool[pick(rng)];
            } while (!assertgen::java::assertion_type_of(truth) || !assertgen::java::check_syntax(truth));
            refs.push_back(ref(id, truth));
            std::vector<std::string> cands;
            for (int n = len(rng); n > 0; --n) {
                cands.push_back(pool[pick(rng)]);
            }
            preds.push_back(pred(id, cands));
        }
        auto report = evaluate(preds, refs, ks);
        EXPECT_LE(report.top_k_accuracy[1], report.top_k_accuracy[5]);
        EXPECT_LE(report.top_k_accuracy[5], report.top_k_accuracy[10]);
        EXPECT_LE(report.top_k_accuracy[1], report.types.type_accuracy);
        EXPECT_GE(report.bleu, 0.0);
        EXPECT_LE(report.bleu, 1.0);
        for (const auto& [kind, s] : report.types.per_kind) {
            double hm = s.precision + s.recall == 0 ? 0 : 2 * s.precision * s.recall / (s.precision + s.recall);
            EXPECT_DOUBLE_EQ(s.f1, hm);
        }
    }
}

TEST(Report, SerializesAndRenders)
{
    std::vector<Reference> refs = {ref("1", "assertTrue(a);"), ref("2", "assertNull(b);")};
    std::vector<Prediction> preds = {pred("1", {"assertTrue(a);"}), pred("2", {"assertNotNull(b);"})};
    std::vector<int> ks = {1, 10};
    auto report = evaluate(preds, refs, ks);
    auto j = report_to_json(report);
    EXPECT_EQ(j["n_samples"], 2);
    EXPECT_DOUBLE_EQ(j["top_k_accuracy"]["1"].get<double>(), 0.5);
    EXPECT_DOUBLE_EQ(j["conditional_accuracy"]["assertTrue"].get<double>(), 1.0);
    EXPECT_FALSE(j["conditional_accuracy"].contains("assertNull"));
    EXPECT_EQ(j["per_kind"].size(), 8u);
    auto table = render_table(report);
    EXPECT_NE(table.find("top-10 accuracy"), std::string::npos);
    EXPECT_NE(table.find("assertNull"), std::string::npos);
}

TEST(References, AbstractTruthsAreConcretized)
{
    assertgen::corpus::DatasetSample s;
    s.sample_id = "x";
    s.token_form = assertgen::corpus::TokenForm::Abstract;
    s.truth_assertion = {"ASSERT_0", "(", "IDENT_0", ")", ";"};
    s.assertion_kind = AssertionKind::AssertTrue;
    s.dictionary = assertgen::abstraction::AbstractionDictionary::from_entries(
        std::vector<assertgen::abstraction::AbstractionDictionary::Entry>{{"IDENT_0", "ok"},
                                                                           {"ASSERT_0", "assertTrue"}});
    std::vector<assertgen::corpus::DatasetSample> samples = {s};
    auto refs = references_from_samples(samples);
    EXPECT_EQ(refs[0].tokens, toks("assertTrue(ok);"));
    EXPECT_EQ(refs[0].kind, AssertionKind::AssertTrue);
}
