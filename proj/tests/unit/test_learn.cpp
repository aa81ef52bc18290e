#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "acdc/error.hpp"
#include "acdc/lang/parser.hpp"
#include "acdc/learn/evaluate.hpp"
#include "acdc/learn/model_io.hpp"
#include "acdc/learn/schema.hpp"
#include "acdc/learn/svm.hpp"
#include "acdc/learn/training.hpp"
#include "acdc/localize/coverage.hpp"
#include "acdc/runtime/interpreter.hpp"
#include "oracles.hpp"

using namespace acdc;
using Matrix = std::vector<std::vector<std::int64_t>>;

namespace {

std::vector<std::string> schema_names(const char* src, int predicate)
{
    const auto p = lang::parse(src);
    return learn::build_schema(p, PredicateId(predicate)).names();
}

double accuracy(const learn::ClassifierModel& m, const Matrix& x, const std::vector<int>& y)
{
    std::size_t ok = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        ok += m.negate(x[i]) == (y[i] > 0);
    return static_cast<double>(ok) / static_cast<double>(x.size());
}

// Checks the KKT conditions of the solved dual in `stats`.
void expect_kkt(const learn::ClassifierModel& m, const learn::TrainStats& st, double tol)
{
    const std::size_t n = st.alpha.size();
    double balance = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        balance += st.alpha[i] * st.labels[i];
        double f = m.bias;
        for (std::size_t j = 0; j < n; ++j)
            f += st.alpha[j] * st.labels[j] * learn::kernel_value(m.kernel, m.gamma, st.points[j], st.points[i]);
        const double margin = st.labels[i] * f;
        ASSERT_GE(st.alpha[i], -1e-12);
        ASSERT_LE(st.alpha[i], st.upper_bound[i] + 1e-12);
        if (st.alpha[i] <= 1e-12)
            EXPECT_GE(margin, 1.0 - tol);
        else if (st.alpha[i] >= st.upper_bound[i] - 1e-12)
            EXPECT_LE(margin, 1.0 + tol);
        else
            EXPECT_NEAR(margin, 1.0, tol);
    }
    EXPECT_NEAR(balance, 0.0, 1e-9);
}

void expect_monotone(const learn::TrainStats& st)
{
    for (std::size_t i = 1; i < st.objective.size(); ++i)
        ASSERT_GE(st.objective[i], st.objective[i - 1] - 1e-12) << "iteration " << i;
}

lang::TestSuite suite_of(std::vector<std::pair<std::vector<std::int64_t>, std::string>> cases)
{
    lang::TestSuite s;
    for (auto& [a, e] : cases)
        s.cases.push_back({a, e});
    return s;
}

} // namespace

TEST(Schema, ConditionVariablesComeFirst)
{
    EXPECT_EQ(schema_names("func main(a: int, b: int) { if (a < b) { print(a); } }", 0),
              (std::vector<std::string>{"a", "b"}));
}

TEST(Schema, ParametersLocalsAndGlobals)
{
    const auto names = schema_names(R"(var g: int = 4;
func main(x: int) {
    var y: int = x + g;
    if (x > 0) {
        print(y);
    }
}
)",
                                    0);
    ASSERT_EQ(names.size(), 3u);
    EXPECT_EQ(names[0], "x");
    EXPECT_EQ(std::set<std::string>(names.begin(), names.end()), (std::set<std::string>{"x", "y", "g"}));
}

TEST(Schema, CallResultsInTheCondition)
{
    const auto names = schema_names(R"(func h(v: int): int {
    return v - 1;
}
func main(x: int) {
    if (h(x) > 0) {
        print(x);
    }
}
)",
                                    0);
    EXPECT_NE(std::find(names.begin(), names.end(), "h(x)"), names.end());
}

TEST(Featurize, ArrayFoldSeparatesSingleElementChanges)
{
    std::mt19937_64 rng(1);
    int collisions = 0;
    for (int i = 0; i < 1000; ++i) {
        std::vector<std::int64_t> a(1 + rng() % 8);
        for (auto& v : a)
            v = static_cast<std::int64_t>(rng() % 100);
        auto b = a;
        b[rng() % b.size()] += 1 + static_cast<std::int64_t>(rng() % 50);
        collisions += learn::reduce_array(a) == learn::reduce_array(b);
    }
    EXPECT_LT(collisions, 1);
    EXPECT_EQ(learn::reduce_string("abc"), learn::reduce_string("abc"));
    EXPECT_NE(learn::reduce_string("abc"), learn::reduce_string("abd"));
}

TEST(Standardization, ZeroMeanUnitVariance)
{
    std::mt19937_64 rng(8);
    std::normal_distribution<double> d(5.0, 3.0);
    std::vector<std::vector<double>> x(50, std::vector<double>(3));
    for (auto& row : x) {
        row[0] = d(rng);
        row[1] = 7.0; // constant
        row[2] = d(rng) * 100.0;
    }
    std::vector<double> mean, scale;
    learn::fit_standardization(x, mean, scale);
    EXPECT_EQ(scale[1], 1.0);
    for (std::size_t k : {0u, 2u}) {
        double m = 0.0, v = 0.0;
        for (const auto& row : x)
            m += (row[k] - mean[k]) / scale[k];
        m /= 50.0;
        for (const auto& row : x)
            v += std::pow((row[k] - mean[k]) / scale[k] - m, 2);
        EXPECT_LT(std::abs(m), 1e-9);
        EXPECT_NEAR(std::sqrt(v / 50.0), 1.0, 1e-9);
    }
}

TEST(Svm, XorMatchesReferenceSolution)
{
    const Matrix x{{0, 0}, {1, 1}, {0, 1}, {1, 0}};
    const std::vector<int> y{1, 1, -1, -1};
    learn::TrainStats st;
    const auto m = learn::train_svm(x, y, {}, &st);
    EXPECT_EQ(accuracy(m, x, y), 1.0);
    EXPECT_NEAR(m.gamma, 0.5, 1e-12); // d = 2, unit variance after scaling

    std::vector<std::vector<double>> k(4, std::vector<double>(4));
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            k[i][j] = learn::kernel_value(m.kernel, m.gamma, st.points[i], st.points[j]);
    const auto ref = oracle::reference_svm(k, st.labels, st.upper_bound);
    ASSERT_EQ(ref.alpha.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i)
        EXPECT_NEAR(st.alpha[i], ref.alpha[i], 1e-3);
    for (std::size_t i = 0; i < 4; ++i) {
        double f = ref.bias;
        for (std::size_t j = 0; j < 4; ++j)
            f += ref.alpha[j] * st.labels[j] * k[i][j];
        EXPECT_NEAR(m.decision_value(x[i]), f, 1e-3);
    }
    expect_kkt(m, st, 2e-3);
    expect_monotone(st);
}

TEST(Svm, LinearlySeparableHundredPoints)
{
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::int64_t> u(-50, 50);
    Matrix x;
    std::vector<int> y;
    while (x.size() < 100) {
        const std::int64_t a = u(rng), b = u(rng);
        const std::int64_t s = 2 * a + b - 10;
        if (std::abs(s) < 8)
            continue; // keep a margin
        x.push_back({a, b});
        y.push_back(s > 0 ? 1 : -1);
    }
    for (auto kind : {learn::KernelKind::Rbf, learn::KernelKind::Linear}) {
        learn::SvmConfig cfg;
        cfg.kernel = kind;
        cfg.c = 100.0;
        learn::TrainStats st;
        const auto m = learn::train_svm(x, y, cfg, &st);
        EXPECT_EQ(accuracy(m, x, y), 1.0) << learn::to_string(kind);
        EXPECT_TRUE(st.converged);
        expect_kkt(m, st, 2e-3);
        expect_monotone(st);
    }
}

TEST(Svm, RandomProblemsSatisfyKkt)
{
    std::mt19937_64 rng(12);
    for (int round = 0; round < 20; ++round) {
        Matrix x;
        std::vector<int> y;
        const std::size_t n = 10 + rng() % 40;
        for (std::size_t i = 0; i < n; ++i) {
            x.push_back({static_cast<std::int64_t>(rng() % 20), static_cast<std::int64_t>(rng() % 20)});
            y.push_back(rng() % 3 == 0 ? 1 : -1);
        }
        if (std::set<int>(y.begin(), y.end()).size() < 2)
            continue;
        learn::TrainStats st;
        const auto m = learn::train_svm(x, y, {}, &st);
        ASSERT_TRUE(st.converged);
        expect_kkt(m, st, 2e-3);
        expect_monotone(st);
    }
}

TEST(Svm, OneClassGivesConstantModel)
{
    const auto neg = learn::train_svm({{1, 2}, {3, 4}}, {-1, -1});
    ASSERT_TRUE(neg.constant.has_value());
    EXPECT_FALSE(neg.negate(std::vector<std::int64_t>{5, 5}));
    const auto pos = learn::train_svm({{1, 2}}, {1});
    EXPECT_TRUE(pos.negate(std::vector<std::int64_t>{0, 0}));
}

TEST(Svm, DuplicatesMergeWithoutChangingTheOptimum)
{
    const Matrix x{{0, 0}, {1, 1}, {0, 1}, {1, 0}};
    const std::vector<int> y{1, 1, -1, -1};
    Matrix x2 = x;
    std::vector<int> y2 = y;
    x2.push_back({0, 0});
    y2.push_back(1);
    learn::SvmConfig cfg;
    cfg.balance_classes = false;
    cfg.gamma = 0.5;
    learn::TrainStats st;
    learn::train_svm(x2, y2, cfg, &st);
    EXPECT_EQ(st.points.size(), 4u);
    EXPECT_DOUBLE_EQ(*std::max_element(st.upper_bound.begin(), st.upper_bound.end()), 2.0);
}

TEST(Svm, DeterministicAndRoundTrips)
{
    const Matrix x{{3, 1}, {4, 1}, {9, 2}, {1, 7}, {2, 8}, {5, 5}};
    const std::vector<int> y{1, 1, 1, -1, -1, -1};
    const auto a = learn::train_svm(x, y);
    const auto b = learn::train_svm(x, y);
    EXPECT_EQ(learn::model_to_json(a).dump(), learn::model_to_json(b).dump());
    const auto back = learn::model_from_json(learn::model_to_json(a));
    EXPECT_EQ(back, a);
    for (double v : {0.1, -2.5e-300, 1.0 / 3.0, 6.02214076e23})
        EXPECT_EQ(learn::decode_double(learn::encode_double(v)), v);
}

namespace {

// The accumulator's first step is wrong; the if runs three times per run.
const char* kFirstStep = R"(func main(a: int) {
    var i: int = 0;
    var s: int = 0;
    while (i < 3) {
        if (i != 0) {
            s = s + a;
        } else {
            s = s + 1;
        }
        i = i + 1;
    }
    print(s);
}
)";

struct Fixture
{
    lang::Program program = lang::parse(kFirstStep);
    runtime::Executor executor{program};
    lang::TestSuite suite = suite_of({{{2}, "6\n"}, {{5}, "15\n"}, {{1}, "3\n"}, {{1}, "3\n"}});
    search::OccurrenceTable occ;
    search::Solution solution;

    Fixture()
    {
        const auto profile = localize::collect_profiles(executor, suite);
        suite.verdicts = profile.verdicts;
        occ = search::OccurrenceTable::from_profile(profile);
        solution.pairs = {{PredicateId(1), search::Pattern::First}};
        solution.pair_fixed = {{0, 1}};
        solution.fixed = {0, 1};
        solution.completeness = search::Completeness::Full;
    }
};

} // namespace

TEST(TrainingData, LabelsFollowThePattern)
{
    Fixture f;
    const auto sets = learn::collect_training_data(f.executor, f.suite, {0, 1, 2, 3}, f.solution, f.occ);
    const auto& ts = sets.at(PredicateId(1));
    // two failing runs: 1 NS + 2 DNS each; two passing runs: 3 DNS each
    EXPECT_EQ(ts.ns.size(), 2u);
    EXPECT_EQ(ts.dns.size(), 10u);
    EXPECT_EQ(ts.feature_names, f.executor.schema(PredicateId(1)).names());
}

TEST(TrainingData, StaleBaselineIsDetected)
{
    Fixture f;
    auto stale = f.suite;
    stale.cases[2].expected_output = "4\n"; // would now fail
    EXPECT_THROW(learn::collect_training_data(f.executor, stale, {0, 1, 2, 3}, f.solution, f.occ),
                 learn::StaleBaselineError);
}

TEST(Split, StratifiedAndDeterministic)
{
    lang::TestSuite s;
    for (int i = 0; i < 20; ++i)
        s.cases.push_back({{i}, ""});
    for (int i = 0; i < 20; ++i)
        s.verdicts.push_back(i < 5 ? lang::Verdict::Fail : lang::Verdict::Pass);
    const auto a = learn::stratified_split(s, 0.4, 9);
    EXPECT_EQ(a.training.size(), 8u); // 2 failing + 6 passing
    EXPECT_EQ(a.testing.size(), 12u);
    int failing = 0;
    for (int t : a.training)
        failing += t < 5;
    EXPECT_EQ(failing, 2);
    const auto b = learn::stratified_split(s, 0.4, 9);
    EXPECT_EQ(a.training, b.training);
    std::set<int> all(a.training.begin(), a.training.end());
    all.insert(a.testing.begin(), a.testing.end());
    EXPECT_EQ(all.size(), 20u);

    const auto tiny = learn::stratified_split(s, 0.01, 9);
    EXPECT_GE(tiny.training.size(), 2u); // one per class at least
    const auto full = learn::stratified_split(s, 1.0, 9);
    EXPECT_EQ(full.training.size(), 20u);
    EXPECT_EQ(full.testing.size(), 20u);
    const auto most = learn::stratified_split(s, 0.99, 9);
    EXPECT_FALSE(most.testing.empty());
}

TEST(Split, RejectsTinySuites)
{
    lang::TestSuite s;
    s.cases = {{{1}, ""}, {{2}, ""}};
    s.verdicts = {lang::Verdict::Fail, lang::Verdict::Pass};
    EXPECT_THROW(learn::stratified_split(s, 0.5, 1), Error);
}

TEST(Evaluate, FullFractionOnFixture)
{
    Fixture f;
    const auto r = learn::evaluate(f.executor, f.suite, f.solution, f.occ, 1.0, 5);
    EXPECT_EQ(r.testing_size, 4u);
    EXPECT_EQ(r.failing_tested, 2u);
    EXPECT_EQ(r.passing_tested, 2u);
    EXPECT_DOUBLE_EQ(r.accuracy,
                     static_cast<double>(r.failing_fixed + r.passing_intact) / static_cast<double>(r.testing_size));
}
