#include <gtest/gtest.h>

#include <random>
#include <set>

#include "acdc/lang/parser.hpp"
#include "acdc/localize/coverage.hpp"
#include "acdc/runtime/interpreter.hpp"
#include "acdc/search/pattern.hpp"
#include "acdc/search/search.hpp"

using namespace acdc;
using search::Pattern;

namespace {

using Idx = std::vector<std::int64_t>;

// Literal reading of each pattern's definition, written independently.
Idx reference_pattern(Pattern p, std::int64_t n)
{
    std::set<std::int64_t> s;
    auto add = [&](std::int64_t i) {
        if (i >= 1 && i <= n)
            s.insert(i);
    };
    switch (p) {
    case Pattern::All:
        for (std::int64_t i = 1; i <= n; ++i)
            add(i);
        break;
    case Pattern::First:
        add(1);
        break;
    case Pattern::Last:
        add(n);
        break;
    case Pattern::AllButFirst:
        for (std::int64_t i = 2; i <= n; ++i)
            add(i);
        break;
    case Pattern::AllButLast:
        for (std::int64_t i = 1; i <= n - 1; ++i)
            add(i);
        break;
    case Pattern::AllButFirstAndLast:
        for (std::int64_t i = 2; i <= n - 1; ++i)
            add(i);
        break;
    case Pattern::Second:
        add(2);
        break;
    case Pattern::SecondToLast:
        add(n - 1);
        break;
    case Pattern::FirstAndLast:
        add(1);
        add(n);
        break;
    case Pattern::Odd:
        for (std::int64_t i = 1; i <= n; i += 2)
            add(i);
        break;
    case Pattern::Even:
        for (std::int64_t i = 2; i <= n; i += 2)
            add(i);
        break;
    }
    return {s.begin(), s.end()};
}

lang::TestSuite suite_of(std::vector<std::pair<std::vector<std::int64_t>, std::string>> cases)
{
    lang::TestSuite s;
    for (auto& [a, e] : cases)
        s.cases.push_back({a, e});
    return s;
}

struct Subject
{
    lang::Program program;
    runtime::Executor executor;
    lang::TestSuite suite;
    search::OccurrenceTable occ;

    Subject(const char* src, lang::TestSuite s) : program(lang::parse(src)), executor(program), suite(std::move(s))
    {
        const auto profile = localize::collect_profiles(executor, suite);
        suite.verdicts = profile.verdicts;
        occ = search::OccurrenceTable::from_profile(profile);
    }
    std::vector<localize::SuspiciousPredicate> all_predicates(double tau = 0.5) const
    {
        std::vector<localize::SuspiciousPredicate> out;
        for (std::size_t p = 0; p < program.predicates.size(); ++p)
            out.push_back({PredicateId(static_cast<std::int32_t>(p)), program.predicates[p].statement, tau});
        return out;
    }
};

const char* kMax = R"(func main(a: int, b: int) {
    if (a < b) {
        print(a);
    } else {
        print(b);
    }
}
)";

search::RepairRecord record(int p, std::map<Pattern, search::TestSet> repairs)
{
    return {PredicateId(p), std::move(repairs)};
}

} // namespace

TEST(Patterns, ExhaustiveTable)
{
    for (Pattern p : search::kPatterns)
        for (std::int64_t n = 0; n <= 6; ++n)
            EXPECT_EQ(search::occurrences_for_pattern(p, n), reference_pattern(p, n))
                << search::to_string(p) << " n=" << n;
}

TEST(Patterns, NamedCases)
{
    EXPECT_EQ(search::occurrences_for_pattern(Pattern::FirstAndLast, 1), (Idx{1}));
    EXPECT_EQ(search::occurrences_for_pattern(Pattern::AllButFirstAndLast, 4), (Idx{2, 3}));
    EXPECT_EQ(search::occurrences_for_pattern(Pattern::Even, 5), (Idx{2, 4}));
    EXPECT_TRUE(search::occurrences_for_pattern(Pattern::SecondToLast, 1).empty());
}

TEST(Patterns, AllButVariantsAreComplements)
{
    const std::pair<Pattern, Pattern> pairs[] = {{Pattern::AllButFirst, Pattern::First},
                                                 {Pattern::AllButLast, Pattern::Last},
                                                 {Pattern::AllButFirstAndLast, Pattern::FirstAndLast}};
    for (std::int64_t n = 0; n <= 9; ++n) {
        const auto all = search::occurrences_for_pattern(Pattern::All, n);
        for (const auto& [rest, x] : pairs) {
            const auto removed = search::occurrences_for_pattern(x, n);
            Idx expected;
            std::set_difference(all.begin(), all.end(), removed.begin(), removed.end(), std::back_inserter(expected));
            EXPECT_EQ(search::occurrences_for_pattern(rest, n), expected);
        }
    }
}

TEST(Patterns, NamesRoundTrip)
{
    for (Pattern p : search::kPatterns)
        EXPECT_EQ(search::parse_pattern(search::to_string(p)), p);
    EXPECT_FALSE(search::parse_pattern("sometimes").has_value());
    EXPECT_EQ(search::to_string(Pattern::Second), "first+1");
    EXPECT_EQ(search::to_string(Pattern::AllButFirstAndLast), "all-(first+last)");
}

TEST(SingleSearch, MaxHasFivePatternsCoincidingOnOneEvaluation)
{
    Subject s(kMax, suite_of({{{1, 2}, "2\n"}, {{3, 5}, "5\n"}, {{4, 4}, "4\n"}, {{7, 7}, "7\n"}}));
    const auto r = search::single_predicate_search(s.executor, s.suite, s.all_predicates(), s.occ);
    std::set<Pattern> full;
    for (const auto& sol : r.solutions) {
        ASSERT_EQ(sol.pairs.size(), 1u);
        EXPECT_EQ(sol.completeness == search::Completeness::Full, sol.fixed == search::TestSet({0, 1}));
        if (sol.completeness == search::Completeness::Full)
            full.insert(sol.pairs[0].pattern);
    }
    EXPECT_EQ(full, (std::set<Pattern>{Pattern::All, Pattern::First, Pattern::Last, Pattern::FirstAndLast,
                                       Pattern::Odd}));
    EXPECT_EQ(r.solutions.front().pairs[0].pattern, Pattern::All);
}

TEST(SingleSearch, RecordsReplay)
{
    Subject s(kMax, suite_of({{{1, 2}, "2\n"}, {{3, 5}, "5\n"}, {{4, 4}, "4\n"}}));
    const auto r = search::single_predicate_search(s.executor, s.suite, s.all_predicates(), s.occ);
    for (const auto& rec : r.records)
        for (const auto& [pattern, tests] : rec.repairs)
            for (int t : tests) {
                runtime::NegationPlan plan;
                plan.entries[rec.predicate] = search::occurrence_set(pattern, s.occ.count(t, rec.predicate));
                EXPECT_EQ(s.executor.execute_with_negation(s.suite.cases[static_cast<std::size_t>(t)], plan).verdict,
                          lang::Verdict::Pass);
            }
}

TEST(SingleSearch, NoBehaviourChangeMeansNoSolutions)
{
    // the predicate is fine; the printed constant is wrong
    Subject s("func main(a: int) { if (a > 0) { print(1); } else { print(1); } }",
              suite_of({{{1}, "2\n"}, {{-1}, "2\n"}, {{5}, "1\n"}}));
    const auto r = search::single_predicate_search(s.executor, s.suite, s.all_predicates(), s.occ);
    EXPECT_TRUE(r.solutions.empty());
}

TEST(SingleSearch, PartialWhenOnlySomeFailuresAreControlFlow)
{
    std::vector<std::pair<std::vector<std::int64_t>, std::string>> cases;
    for (std::int64_t a = 1; a <= 4; ++a)
        cases.push_back({{a}, "1\n"}); // fixed by negation
    for (std::int64_t a = 6; a <= 13; ++a)
        cases.push_back({{a}, "3\n"}); // not reachable by any negation
    cases.push_back({{20}, "1\n"});
    cases.push_back({{0}, "2\n"});
    Subject s("func main(a: int) { if (a > 5) { print(1); } else { print(2); } }", suite_of(cases));
    ASSERT_EQ(s.suite.failing().size(), 12u);
    const auto out = search::search_repairs(s.executor, s.suite, s.all_predicates(), s.occ);
    ASSERT_FALSE(out.solutions.empty());
    EXPECT_EQ(out.solutions[0].completeness, search::Completeness::Partial);
    EXPECT_EQ(out.solutions[0].fixed.size(), 4u);
}

TEST(Greedy, TwoPredicatesCoverEverything)
{
    const std::vector<int> fail{1, 2, 3};
    const auto s = search::multiple_predicate_search(
        {record(1, {{Pattern::All, {1, 2}}}), record(2, {{Pattern::First, {3}}})}, fail);
    ASSERT_EQ(s.pairs.size(), 2u);
    EXPECT_EQ(s.pairs[0], (search::SolutionPair{PredicateId(1), Pattern::All}));
    EXPECT_EQ(s.pairs[1], (search::SolutionPair{PredicateId(2), Pattern::First}));
    EXPECT_EQ(s.completeness, search::Completeness::Full);
    EXPECT_EQ(s.fixed, search::TestSet({1, 2, 3}));
}

TEST(Greedy, OneColumnSuffices)
{
    const auto s = search::multiple_predicate_search({record(0, {{Pattern::Last, {4, 5}}})}, {4, 5});
    ASSERT_EQ(s.pairs.size(), 1u);
    EXPECT_EQ(s.completeness, search::Completeness::Full);
}

TEST(Greedy, SkipsRedundantColumns)
{
    const auto s = search::multiple_predicate_search({record(0, {{Pattern::All, {1, 2}}}),
                                                      record(1, {{Pattern::All, {3, 4}}}),
                                                      record(2, {{Pattern::All, {2, 3}}})},
                                                     {1, 2, 3, 4});
    ASSERT_EQ(s.pairs.size(), 2u);
    std::set<int> chosen;
    for (const auto& p : s.pairs)
        chosen.insert(p.predicate.value);
    EXPECT_EQ(chosen, (std::set<int>{0, 1}));
}

TEST(Greedy, PredicateUsedOnceAndPartialWhenStuck)
{
    // both columns belong to predicate 0, so only one may be taken
    const auto s = search::multiple_predicate_search(
        {record(0, {{Pattern::First, {1}}, {Pattern::Last, {2}}})}, {1, 2});
    ASSERT_EQ(s.pairs.size(), 1u);
    EXPECT_EQ(s.completeness, search::Completeness::Partial);
    EXPECT_EQ(s.fixed.size(), 1u);
}

TEST(Greedy, UnionOfColumnsAndNoRedundantPick)
{
    std::mt19937_64 rng(17);
    for (int round = 0; round < 200; ++round) {
        std::vector<search::RepairRecord> records;
        const int preds = 1 + static_cast<int>(rng() % 4);
        std::vector<int> fail{0, 1, 2, 3, 4, 5};
        for (int p = 0; p < preds; ++p) {
            search::RepairRecord r{PredicateId(p), {}};
            for (Pattern pat : search::kPatterns)
                if (rng() % 3 == 0) {
                    search::TestSet ts;
                    for (int t : fail)
                        if (rng() % 3 == 0)
                            ts.insert(t);
                    if (!ts.empty())
                        r.repairs[pat] = ts;
                }
            records.push_back(r);
        }
        const auto s = search::multiple_predicate_search(records, fail);
        search::TestSet un;
        for (std::size_t i = 0; i < s.pairs.size(); ++i) {
            const auto& col = records[s.pairs[i].predicate.index()].repairs.at(s.pairs[i].pattern);
            const std::size_t before = un.size();
            un.insert(col.begin(), col.end());
            ASSERT_GT(un.size(), before);
        }
        ASSERT_EQ(un, s.fixed);
        ASSERT_EQ(s.completeness == search::Completeness::Full, s.fixed.size() == fail.size());
    }
}

namespace {

// Two failing tests (0, 1) and one passing test (2); counts per test for a
// single predicate.
search::OccurrenceTable table(std::int64_t f0, std::int64_t f1, std::int64_t pass)
{
    search::OccurrenceTable t;
    t.counts = {{f0}, {f1}, {pass}};
    t.verdicts = {lang::Verdict::Fail, lang::Verdict::Fail, lang::Verdict::Pass};
    return t;
}

search::Solution single(Pattern p)
{
    search::Solution s;
    s.pairs = {{PredicateId(0), p}};
    s.pair_fixed = {{0, 1}};
    s.fixed = {0, 1};
    s.completeness = search::Completeness::Full;
    return s;
}

} // namespace

TEST(Scenario, Classification)
{
    EXPECT_EQ(search::classify_scenario(single(Pattern::All), table(1, 2, 0)), search::Scenario::OnlyFailing);
    EXPECT_EQ(search::classify_scenario(single(Pattern::All), table(1, 2, 3)), search::Scenario::AlwaysNegate);
    EXPECT_EQ(search::classify_scenario(single(Pattern::First), table(3, 3, 3)), search::Scenario::SomeOccurrences);
    EXPECT_EQ(search::classify_scenario(single(Pattern::Last), table(1, 3, 2)), search::Scenario::Mixed);
    auto multi = single(Pattern::All);
    multi.pairs.push_back({PredicateId(0), Pattern::Last});
    multi.pair_fixed = {{0}, {1}};
    EXPECT_EQ(search::classify_scenario(multi, table(1, 2, 3)), search::Scenario::MultiplePredicates);
}

TEST(Scenario, InLoopPredicateNegatedFirstTime)
{
    // the accumulator's first step is wrong; the if runs three times per test
    Subject s(R"(func main(a: int) {
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
)",
              suite_of({{{2}, "6\n"}, {{5}, "15\n"}, {{1}, "3\n"}}));
    ASSERT_EQ(s.suite.failing(), (std::vector<int>{0, 1}));
    const auto out = search::search_repairs(s.executor, s.suite, {{PredicateId(1), StatementId(4), 0.5}}, s.occ);
    ASSERT_FALSE(out.solutions.empty());
    EXPECT_EQ(out.solutions[0].pairs[0].pattern, Pattern::First);
    EXPECT_EQ(out.solutions[0].scenario, search::Scenario::SomeOccurrences);
}
