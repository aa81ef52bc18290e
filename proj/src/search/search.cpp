#include "acdc/search/search.hpp"

#include <algorithm>
#include <tuple>

#include "acdc/parallel.hpp"

namespace acdc::search {

std::string_view to_string(Completeness c)
{
    return c == Completeness::Full ? "FULL" : "PARTIAL";
}

runtime::NegationPlan Solution::plan_for(const std::map<PredicateId, std::int64_t>& counts) const
{
    runtime::NegationPlan plan;
    for (const auto& pair : pairs) {
        auto it = counts.find(pair.predicate);
        const std::int64_t n = it == counts.end() ? 0 : it->second;
        auto set = occurrence_set(pair.pattern, n);
        if (!set.empty())
            plan.entries[pair.predicate] = std::move(set);
    }
    return plan;
}

std::map<PredicateId, std::int64_t> OccurrenceTable::for_test(int test) const
{
    std::map<PredicateId, std::int64_t> out;
    const auto& row = counts.at(test);
    for (std::size_t p = 0; p < row.size(); ++p)
        if (row[p] > 0)
            out.emplace(PredicateId(static_cast<std::int32_t>(p)), row[p]);
    return out;
}

OccurrenceTable OccurrenceTable::from_profile(const localize::SuiteProfile& profile)
{
    OccurrenceTable table;
    table.verdicts = profile.verdicts;
    for (const auto& run : profile.runs)
        table.counts.push_back(run.occurrences);
    return table;
}

namespace {

struct Ranking
{
    std::map<PredicateId, double> tau;

    explicit Ranking(const std::vector<localize::SuspiciousPredicate>& preds)
    {
        for (const auto& p : preds)
            tau.emplace(p.predicate, p.tau);
    }

    [[nodiscard]] double of(PredicateId p) const
    {
        auto it = tau.find(p);
        return it == tau.end() ? 0.0 : it->second;
    }

    // Simpler pattern first, then larger tau, then smaller id.
    [[nodiscard]] bool before(const SolutionPair& a, const SolutionPair& b) const
    {
        if (a.pattern != b.pattern)
            return simplicity_rank(a.pattern) < simplicity_rank(b.pattern);
        if (of(a.predicate) != of(b.predicate))
            return of(a.predicate) > of(b.predicate);
        return a.predicate < b.predicate;
    }
};

} // namespace

SearchResult single_predicate_search(const runtime::Executor& executor, const lang::TestSuite& suite,
                                     const std::vector<localize::SuspiciousPredicate>& predicates,
                                     const OccurrenceTable& occurrences, const SearchConfig& config)
{
    const std::vector<int> t_fail = suite.failing();
    struct Trial
    {
        std::size_t pred;
        int test;
        Pattern pattern;
        runtime::NegationPlan plan;
    };
    std::vector<Trial> trials;
    for (std::size_t pi = 0; pi < predicates.size(); ++pi) {
        const PredicateId p = predicates[pi].predicate;
        for (int t : t_fail) {
            const std::int64_t n = occurrences.count(t, p);
            for (Pattern pattern : kPatterns) {
                auto set = occurrence_set(pattern, n);
                if (set.empty())
                    continue;
                runtime::NegationPlan plan;
                plan.entries.emplace(p, std::move(set));
                trials.push_back({pi, t, pattern, std::move(plan)});
            }
        }
    }

    std::vector<std::uint8_t> passed(trials.size(), 0);
    parallel_for(trials.size(), config.jobs, [&](std::size_t i) {
        const auto& trial = trials[i];
        const auto result = executor.execute_with_negation(suite.cases[trial.test], trial.plan, config.exec);
        passed[i] = result.verdict == lang::Verdict::Pass ? 1 : 0;
    });

    SearchResult out;
    out.records.resize(predicates.size());
    for (std::size_t pi = 0; pi < predicates.size(); ++pi)
        out.records[pi].predicate = predicates[pi].predicate;
    for (std::size_t i = 0; i < trials.size(); ++i)
        if (passed[i])
            out.records[trials[i].pred].repairs[trials[i].pattern].insert(trials[i].test);

    const Ranking ranking(predicates);
    for (const auto& record : out.records) {
        for (const auto& [pattern, fixed] : record.repairs) {
            if (fixed.empty())
                continue;
            Solution s;
            s.pairs.push_back({record.predicate, pattern});
            s.pair_fixed.push_back(fixed);
            s.fixed = fixed;
            s.completeness = fixed.size() == t_fail.size() ? Completeness::Full : Completeness::Partial;
            out.solutions.push_back(std::move(s));
        }
    }
    std::sort(out.solutions.begin(), out.solutions.end(), [&](const Solution& a, const Solution& b) {
        if (a.fixed.size() != b.fixed.size())
            return a.fixed.size() > b.fixed.size();
        return ranking.before(a.pairs.front(), b.pairs.front());
    });
    return out;
}

Solution multiple_predicate_search(const std::vector<RepairRecord>& records, const std::vector<int>& t_fail,
                                   const std::vector<localize::SuspiciousPredicate>& predicates)
{
    struct Column
    {
        SolutionPair pair;
        const TestSet* fixed;
    };
    std::vector<Column> columns;
    for (const auto& r : records)
        for (const auto& [pattern, fixed] : r.repairs)
            if (!fixed.empty())
                columns.push_back({{r.predicate, pattern}, &fixed});

    const Ranking ranking(predicates);
    const TestSet wanted(t_fail.begin(), t_fail.end());
    Solution s;
    for (;;) {
        const Column* best = nullptr;
        std::size_t best_gain = 0;
        for (const auto& col : columns) {
            std::size_t gain = 0;
            for (int t : *col.fixed)
                if (wanted.count(t) && !s.fixed.count(t))
                    ++gain;
            if (gain == 0)
                continue;
            if (!best || gain > best_gain || (gain == best_gain && ranking.before(col.pair, best->pair))) {
                best = &col;
                best_gain = gain;
            }
        }
        if (!best)
            break;
        const SolutionPair chosen = best->pair;
        TestSet fixed;
        for (int t : *best->fixed)
            if (wanted.count(t))
                fixed.insert(t);
        s.fixed.insert(fixed.begin(), fixed.end());
        s.pairs.push_back(chosen);
        s.pair_fixed.push_back(std::move(fixed));
        std::erase_if(columns, [&](const Column& c) { return c.pair.predicate == chosen.predicate; });
        if (s.fixed.size() == wanted.size())
            break;
    }
    s.completeness = !wanted.empty() && s.fixed.size() == wanted.size() ? Completeness::Full : Completeness::Partial;
    return s;
}

Scenario classify_scenario(const Solution& solution, const OccurrenceTable& occurrences)
{
    if (solution.pairs.size() > 1)
        return Scenario::MultiplePredicates;
    const auto& [p, pattern] = solution.pairs.front();
    bool in_passing = false;
    for (std::size_t t = 0; t < occurrences.counts.size(); ++t)
        if (occurrences.verdicts[t] == lang::Verdict::Pass && occurrences.count(static_cast<int>(t), p) > 0)
            in_passing = true;
    if (!in_passing)
        return Scenario::OnlyFailing;
    if (pattern == Pattern::All)
        return Scenario::AlwaysNegate;
    bool any_full = false;
    bool any_proper = false;
    const TestSet& runs = solution.pair_fixed.empty() ? solution.fixed : solution.pair_fixed.front();
    for (int t : runs) {
        const std::int64_t n = occurrences.count(t, p);
        const auto selected = static_cast<std::int64_t>(occurrences_for_pattern(pattern, n).size());
        if (selected == n)
            any_full = true;
        else
            any_proper = true;
    }
    if (any_full && any_proper)
        return Scenario::Mixed;
    if (any_proper)
        return Scenario::SomeOccurrences;
    return Scenario::AlwaysNegate;
}

SearchOutcome search_repairs(const runtime::Executor& executor, const lang::TestSuite& suite,
                             const std::vector<localize::SuspiciousPredicate>& predicates,
                             const OccurrenceTable& occurrences, const SearchConfig& config)
{
    SearchOutcome out;
    out.single = single_predicate_search(executor, suite, predicates, occurrences, config);
    out.solutions = out.single.solutions;
    const bool have_full = std::any_of(out.solutions.begin(), out.solutions.end(),
                                       [](const Solution& s) { return s.completeness == Completeness::Full; });
    if (!have_full) {
        Solution multi = multiple_predicate_search(out.single.records, suite.failing(), predicates);
        if (multi.pairs.size() > 1) {
            out.solutions.push_back(multi);
            std::stable_sort(out.solutions.begin(), out.solutions.end(), [](const Solution& a, const Solution& b) {
                if (a.completeness != b.completeness)
                    return a.completeness == Completeness::Full;
                return a.fixed.size() > b.fixed.size();
            });
        }
        if (!multi.pairs.empty())
            out.multiple = std::move(multi);
    }
    for (auto& s : out.solutions)
        s.scenario = classify_scenario(s, occurrences);
    if (out.multiple)
        out.multiple->scenario = classify_scenario(*out.multiple, occurrences);
    return out;
}

} // namespace acdc::search
