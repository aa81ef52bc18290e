#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "acdc/error.hpp"
#include "acdc/learn/svm.hpp"
#include "acdc/runtime/interpreter.hpp"
#include "acdc/search/search.hpp"

namespace acdc::learn {

struct TrainingSet
{
    PredicateId predicate;
    std::vector<std::string> feature_names;
    std::vector<std::vector<std::int64_t>> ns;  // NEGATE
    std::vector<std::vector<std::int64_t>> dns; // DON'T-NEGATE
};

class StaleBaselineError : public Error
{
  public:
    using Error::Error;
};

// Re-runs every training test capturing snapshots at the solution's
// predicates. A failing test runs under the plan of the first pair that
// repairs it on its own; failing tests no pair repairs are left out. Passing
// tests run unmodified and contribute DNS only.
std::map<PredicateId, TrainingSet> collect_training_data(const runtime::Executor& executor,
                                                         const lang::TestSuite& suite,
                                                         const std::vector<int>& training_tests,
                                                         const search::Solution& solution,
                                                         const search::OccurrenceTable& occurrences,
                                                         const runtime::ExecConfig& config = {}, int jobs = 1);

// Standardizes, then trains the kernel SVM; one-class sets produce a
// constant model.
ClassifierModel train(const TrainingSet& ts, const SvmConfig& config = {}, TrainStats* stats = nullptr);

} // namespace acdc::learn
