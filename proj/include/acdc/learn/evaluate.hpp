#pragma once

#include <cstdint>
#include <vector>

#include "acdc/learn/training.hpp"
#include "acdc/patch/patch.hpp"

namespace acdc::learn {

struct TrainConfig
{
    SvmConfig svm;
    runtime::ExecConfig exec;
    int jobs = 1;
};

// Collects NS/DNS over `training_tests`, trains one model per solution pair
// and assembles the patch.
patch::TrainedPatch train_patch(const runtime::Executor& executor, const lang::TestSuite& suite,
                                const std::vector<int>& training_tests, const search::Solution& solution,
                                const search::OccurrenceTable& occurrences, const TrainConfig& config,
                                double training_fraction = 1.0);

struct Split
{
    std::vector<int> training;
    std::vector<int> testing;
};

inline constexpr std::size_t kMinimumSplitSuite = 3;

// Stratified random split: each verdict class contributes round(fraction *
// size) tests to training, at least one each, and testing keeps at least one
// test. Fraction 1.0 puts every test in both groups. Throws acdc::Error when
// the suite is too small.
Split stratified_split(const lang::TestSuite& suite, double fraction, std::uint64_t seed);

struct AccuracyReport
{
    double fraction = 1.0;
    std::uint64_t seed = 0;
    std::size_t training_size = 0;
    std::size_t testing_size = 0;
    std::size_t failing_tested = 0;
    std::size_t failing_fixed = 0;
    std::size_t passing_tested = 0;
    std::size_t passing_intact = 0;
    double accuracy = 0.0;
};

AccuracyReport evaluate(const runtime::Executor& executor, const lang::TestSuite& suite,
                        const search::Solution& solution, const search::OccurrenceTable& occurrences,
                        double training_fraction, std::uint64_t seed, const TrainConfig& config = {});

} // namespace acdc::learn
