#include "acdc/learn/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "acdc/parallel.hpp"

namespace acdc::learn {

patch::TrainedPatch train_patch(const runtime::Executor& executor, const lang::TestSuite& suite,
                                const std::vector<int>& training_tests, const search::Solution& solution,
                                const search::OccurrenceTable& occurrences, const TrainConfig& config,
                                double training_fraction)
{
    const auto sets =
        collect_training_data(executor, suite, training_tests, solution, occurrences, config.exec, config.jobs);
    std::vector<ClassifierModel> models(solution.pairs.size());
    parallel_for(solution.pairs.size(), config.jobs,
                 [&](std::size_t i) { models[i] = train(sets.at(solution.pairs[i].predicate), config.svm); });
    patch::Provenance prov;
    prov.training_fraction = training_fraction;
    prov.seed = config.svm.seed;
    return patch::build_patch(executor, solution, models, prov);
}

Split stratified_split(const lang::TestSuite& suite, double fraction, std::uint64_t seed)
{
    if (!(fraction > 0.0 && fraction <= 1.0))
        throw Error("training fraction must lie in (0, 1], got " + std::to_string(fraction));
    std::vector<int> failing = suite.failing();
    std::vector<int> passing = suite.passing();
    if (failing.empty())
        throw Error("cannot split: the suite has no failing test");
    Split split;
    if (fraction >= 1.0) {
        for (int i = 0; i < static_cast<int>(suite.cases.size()); ++i)
            split.training.push_back(i);
        split.testing = split.training;
        return split;
    }
    if (suite.cases.size() < kMinimumSplitSuite || passing.empty())
        throw Error("suite too small to stratify: need at least " + std::to_string(kMinimumSplitSuite) +
                    " tests with at least one failing and one passing, got " + std::to_string(failing.size()) +
                    " failing and " + std::to_string(passing.size()) + " passing");

    std::mt19937_64 rng(seed);
    auto shuffle = [&](std::vector<int>& v) {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[rng() % i]);
    };
    shuffle(failing);
    shuffle(passing);
    auto take = [&](std::size_t n) {
        return std::clamp<std::size_t>(static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n))), 1,
                                       n);
    };
    std::size_t nf = take(failing.size());
    std::size_t np = take(passing.size());
    if (nf == failing.size() && np == passing.size()) {
        if (np > 1)
            --np;
        else
            --nf; // at least 3 tests with one passing means nf >= 2 here
    }
    for (std::size_t i = 0; i < failing.size(); ++i)
        (i < nf ? split.training : split.testing).push_back(failing[i]);
    for (std::size_t i = 0; i < passing.size(); ++i)
        (i < np ? split.training : split.testing).push_back(passing[i]);
    std::sort(split.training.begin(), split.training.end());
    std::sort(split.testing.begin(), split.testing.end());
    return split;
}

AccuracyReport evaluate(const runtime::Executor& executor, const lang::TestSuite& suite,
                        const search::Solution& solution, const search::OccurrenceTable& occurrences,
                        double training_fraction, std::uint64_t seed, const TrainConfig& config)
{
    const Split split = stratified_split(suite, training_fraction, seed);
    TrainConfig cfg = config;
    cfg.svm.seed = seed;
    const auto patch = train_patch(executor, suite, split.training, solution, occurrences, cfg, training_fraction);

    runtime::ExecConfig exec = config.exec;
    exec.record_events = false;
    exec.record_coverage = false;
    std::vector<std::uint8_t> ok(split.testing.size(), 0);
    parallel_for(split.testing.size(), config.jobs, [&](std::size_t k) {
        const auto r = patch::execute_with_oracle(executor, suite.cases[split.testing[k]], patch, exec);
        ok[k] = r.verdict == lang::Verdict::Pass ? 1 : 0;
    });

    AccuracyReport report;
    report.fraction = training_fraction;
    report.seed = seed;
    report.training_size = split.training.size();
    report.testing_size = split.testing.size();
    for (std::size_t k = 0; k < split.testing.size(); ++k) {
        if (suite.verdicts[split.testing[k]] == lang::Verdict::Fail) {
            ++report.failing_tested;
            report.failing_fixed += ok[k];
        } else {
            ++report.passing_tested;
            report.passing_intact += ok[k];
        }
    }
    report.accuracy = report.testing_size == 0 ? 0.0
                                               : static_cast<double>(report.failing_fixed + report.passing_intact) /
                                                     static_cast<double>(report.testing_size);
    return report;
}

} // namespace acdc::learn
