#include "acdc/learn/training.hpp"

#include "acdc/parallel.hpp"

namespace acdc::learn {

std::map<PredicateId, TrainingSet> collect_training_data(const runtime::Executor& executor,
                                                         const lang::TestSuite& suite,
                                                         const std::vector<int>& training_tests,
                                                         const search::Solution& solution,
                                                         const search::OccurrenceTable& occurrences,
                                                         const runtime::ExecConfig& config, int jobs)
{
    if (suite.verdicts.size() != suite.cases.size())
        throw Error("training data: suite has no baseline verdicts");

    runtime::ExecConfig cfg = config;
    cfg.record_events = false;
    cfg.record_coverage = false;
    cfg.snapshot_predicates.clear();
    for (const auto& pair : solution.pairs)
        cfg.snapshot_predicates.push_back(pair.predicate);

    struct Run
    {
        bool used = false;
        bool failing = false;
        std::vector<runtime::StateSnapshot> snapshots;
    };
    std::vector<Run> runs(training_tests.size());
    parallel_for(training_tests.size(), jobs, [&](std::size_t k) {
        const int t = training_tests[k];
        const auto& test = suite.cases.at(t);
        Run& run = runs[k];
        if (suite.verdicts[t] == lang::Verdict::Pass) {
            auto result = executor.execute(test, cfg);
            if (result.verdict != lang::Verdict::Pass)
                throw StaleBaselineError("training test " + std::to_string(t) + " no longer passes at baseline");
            run.used = true;
            run.snapshots = std::move(result.snapshots);
            return;
        }
        runtime::ExecConfig plain = config;
        plain.record_events = false;
        plain.record_coverage = false;
        plain.snapshot_predicates.clear();
        if (executor.execute(test, plain).verdict != lang::Verdict::Fail)
            throw StaleBaselineError("training test " + std::to_string(t) + " no longer fails at baseline");
        for (std::size_t i = 0; i < solution.pairs.size(); ++i) {
            if (i < solution.pair_fixed.size() ? !solution.pair_fixed[i].count(t) : !solution.fixed.count(t))
                continue;
            search::Solution single;
            single.pairs = {solution.pairs[i]};
            const auto plan = single.plan_for(occurrences.for_test(t));
            auto result = executor.execute_with_negation(test, plan, cfg);
            run.used = true;
            run.failing = true;
            run.snapshots = std::move(result.snapshots);
            return;
        }
    });

    std::map<PredicateId, TrainingSet> out;
    for (const auto& pair : solution.pairs) {
        TrainingSet ts;
        ts.predicate = pair.predicate;
        ts.feature_names = executor.schema(pair.predicate).names();
        out.emplace(pair.predicate, std::move(ts));
    }
    for (const auto& run : runs) {
        if (!run.used)
            continue;
        for (const auto& snap : run.snapshots) {
            auto& ts = out.at(snap.predicate);
            if (run.failing && snap.negated)
                ts.ns.push_back(snap.values);
            else
                ts.dns.push_back(snap.values);
        }
    }
    return out;
}

ClassifierModel train(const TrainingSet& ts, const SvmConfig& config, TrainStats* stats)
{
    std::vector<std::vector<std::int64_t>> x;
    std::vector<int> y;
    x.reserve(ts.ns.size() + ts.dns.size());
    for (const auto& v : ts.ns) {
        x.push_back(v);
        y.push_back(1);
    }
    for (const auto& v : ts.dns) {
        x.push_back(v);
        y.push_back(-1);
    }
    if (x.empty())
        return ClassifierModel::constant_model(false, ts.feature_names.size());
    return train_svm(x, y, config, stats);
}

} // namespace acdc::learn
