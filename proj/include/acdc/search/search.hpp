#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "acdc/localize/coverage.hpp"
#include "acdc/localize/localizer.hpp"
#include "acdc/runtime/interpreter.hpp"
#include "acdc/search/pattern.hpp"

namespace acdc::search {

// Test indices refer to positions in TestSuite::cases.
using TestSet = std::set<int>;

struct RepairRecord
{
    PredicateId predicate;
    std::map<Pattern, TestSet> repairs;
};

struct SolutionPair
{
    PredicateId predicate;
    Pattern pattern = Pattern::All;

    friend bool operator==(const SolutionPair&, const SolutionPair&) = default;
};

enum class Completeness
{
    Full,
    Partial,
};

std::string_view to_string(Completeness c);

enum class Scenario
{
    OnlyFailing = 1,     // predicate exercised by failing runs only
    AlwaysNegate = 2,    // negate every occurrence
    SomeOccurrences = 3, // negate a proper subset in every failing run
    Mixed = 4,           // whole run in some failing runs, a subset in others
    MultiplePredicates = 5,
};

struct Solution
{
    std::vector<SolutionPair> pairs;
    std::vector<TestSet> pair_fixed; // failing tests each pair repairs on its own
    TestSet fixed;
    Completeness completeness = Completeness::Partial;
    std::optional<Scenario> scenario;

    [[nodiscard]] runtime::NegationPlan plan_for(const std::map<PredicateId, std::int64_t>& counts) const;
};

// Evaluation counts of every predicate in an unmodified run of each test.
struct OccurrenceTable
{
    std::vector<std::vector<std::int64_t>> counts; // [test][predicate]
    std::vector<lang::Verdict> verdicts;

    [[nodiscard]] std::int64_t count(int test, PredicateId p) const { return counts.at(test).at(p.index()); }
    [[nodiscard]] std::map<PredicateId, std::int64_t> for_test(int test) const;

    static OccurrenceTable from_profile(const localize::SuiteProfile& profile);
};

struct SearchConfig
{
    runtime::ExecConfig exec;
    int jobs = 1;
};

struct SearchResult
{
    std::vector<RepairRecord> records;
    std::vector<Solution> solutions; // FULL and PARTIAL single-pair solutions, ranked
};

// Tries every (predicate, failing test, pattern) negation. Occurrence counts
// come from `occurrences`; selections that are empty for a test are skipped.
SearchResult single_predicate_search(const runtime::Executor& executor, const lang::TestSuite& suite,
                                     const std::vector<localize::SuspiciousPredicate>& predicates,
                                     const OccurrenceTable& occurrences, const SearchConfig& config = {});

// Greedy cover of the failing tests by (predicate, pattern) columns.
Solution multiple_predicate_search(const std::vector<RepairRecord>& records, const std::vector<int>& t_fail,
                                   const std::vector<localize::SuspiciousPredicate>& predicates = {});

Scenario classify_scenario(const Solution& solution, const OccurrenceTable& occurrences);

// Full pipeline of the search stage: single search, then the greedy
// multi-predicate search when no single pair repairs every failing test.
// Every returned solution is classified; the best one comes first.
struct SearchOutcome
{
    SearchResult single;
    std::optional<Solution> multiple;
    std::vector<Solution> solutions; // FULL first, then PARTIAL
};

SearchOutcome search_repairs(const runtime::Executor& executor, const lang::TestSuite& suite,
                             const std::vector<localize::SuspiciousPredicate>& predicates,
                             const OccurrenceTable& occurrences, const SearchConfig& config = {});

} // namespace acdc::search
