#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "acdc/graphs/cdg.hpp"
#include "acdc/learn/schema.hpp"
#include "acdc/lang/program.hpp"
#include "acdc/runtime/trace.hpp"

namespace acdc::runtime {

// Consulted right before every predicate evaluation. The evaluated condition
// is XOR-ed with the returned flag.
class NegationHook
{
  public:
    virtual ~NegationHook() = default;

    // When true, `features` passed to should_negate follows the predicate's
    // FeatureSchema; otherwise it is empty.
    [[nodiscard]] virtual bool wants_state(PredicateId) const { return false; }
    virtual bool should_negate(PredicateId predicate, std::int64_t occurrence,
                               std::span<const std::int64_t> features) = 0;
};

struct OccurrenceCounts
{
    std::map<PredicateId, std::int64_t> counts; // predicates evaluated at least once
    bool completed = true;                      // false if the run ended in a runtime error or step limit
    FailureKind failure = FailureKind::None;
};

// Binds a program to its static analyses. Immutable after construction, so
// one Executor may serve any number of concurrent runs.
class Executor
{
  public:
    explicit Executor(const lang::Program& program);

    [[nodiscard]] const lang::Program& program() const noexcept { return *program_; }
    [[nodiscard]] const graphs::Cdg& cdg() const noexcept { return cdg_; }
    [[nodiscard]] const learn::FeatureSchema& schema(PredicateId p) const { return schemas_.at(p.index()); }

    ExecutionResult execute(const lang::TestCase& test, const ExecConfig& config = {}) const;
    ExecutionResult execute_with_negation(const lang::TestCase& test, const NegationPlan& plan,
                                          const ExecConfig& config = {}) const;
    ExecutionResult execute_with_hook(const lang::TestCase& test, NegationHook* hook,
                                      const ExecConfig& config = {}) const;
    OccurrenceCounts count_occurrences(const lang::TestCase& test, const ExecConfig& config = {}) const;

  private:
    const lang::Program* program_;
    graphs::Cdg cdg_;
    std::vector<learn::FeatureSchema> schemas_;
};

ExecutionResult execute(const lang::Program& program, const lang::TestCase& test, const ExecConfig& config = {});
ExecutionResult execute_with_negation(const lang::Program& program, const lang::TestCase& test,
                                      const NegationPlan& plan, const ExecConfig& config = {});
OccurrenceCounts count_occurrences(const lang::Program& program, const lang::TestCase& test,
                                   const ExecConfig& config = {});

// Runs every case and fills suite.verdicts.
void run_baseline(const Executor& executor, lang::TestSuite& suite, const ExecConfig& config = {});

} // namespace acdc::runtime
