#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "acdc/ids.hpp"
#include "acdc/lang/program.hpp"

namespace acdc::runtime {

// One execution of `child` whose dynamic control parent was `parent`.
struct CdEvent
{
    std::int64_t timestamp = 0;
    StatementId parent;
    StatementId child;

    friend bool operator==(const CdEvent&, const CdEvent&) = default;
};

// Program state captured right before a predicate evaluation.
struct StateSnapshot
{
    PredicateId predicate;
    std::int64_t occurrence = 0; // 1-based within the run
    std::vector<std::int64_t> values;
    bool negated = false;

    friend bool operator==(const StateSnapshot&, const StateSnapshot&) = default;
};

enum class FailureKind
{
    None,
    WrongOutput,
    RuntimeError,
    StepLimit,
};

std::string_view to_string(FailureKind kind);

struct ExecutionResult
{
    lang::Verdict verdict = lang::Verdict::Fail;
    FailureKind failure_kind = FailureKind::None;
    std::string output;
    std::string error; // runtime error message, if any
    std::int64_t steps = 0;
    std::vector<CdEvent> events;
    std::vector<StateSnapshot> snapshots;
    std::vector<std::int64_t> occurrences;     // evaluations per PredicateId
    std::vector<std::uint32_t> statement_hits; // executions per StatementId, when recorded

    friend bool operator==(const ExecutionResult&, const ExecutionResult&) = default;
};

// Which occurrences (1-based) of a predicate to invert.
class OccurrenceSet
{
  public:
    OccurrenceSet() = default;
    static OccurrenceSet all();
    static OccurrenceSet of(std::vector<std::int64_t> indices);

    [[nodiscard]] bool is_all() const noexcept { return all_; }
    [[nodiscard]] bool empty() const noexcept { return !all_ && indices_.empty(); }
    [[nodiscard]] bool contains(std::int64_t occurrence) const;
    [[nodiscard]] const std::vector<std::int64_t>& indices() const noexcept { return indices_; }

    friend bool operator==(const OccurrenceSet&, const OccurrenceSet&) = default;

  private:
    bool all_ = false;
    std::vector<std::int64_t> indices_; // sorted, unique, >= 1
};

struct NegationPlan
{
    std::map<PredicateId, OccurrenceSet> entries;

    [[nodiscard]] bool empty() const noexcept { return entries.empty(); }
    // Throws acdc::Error if an index is < 1 or a predicate is unknown.
    void validate(const lang::Program& program) const;
};

struct ExecConfig
{
    std::int64_t step_budget = 1'000'000;
    bool record_events = false;
    bool record_coverage = false;
    std::vector<PredicateId> snapshot_predicates;
    int max_call_depth = 2000;
};

} // namespace acdc::runtime
