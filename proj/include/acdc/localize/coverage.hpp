#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "acdc/graphs/chains.hpp"
#include "acdc/lang/program.hpp"
#include "acdc/runtime/interpreter.hpp"

namespace acdc::localize {

struct ChainMatch
{
    bool covered = false;
    std::int64_t count = 0; // disjoint greedy matches

    friend bool operator==(const ChainMatch&, const ChainMatch&) = default;
};

// A chain is executed by a trace when its edges occur, in order, at strictly
// increasing timestamps. Greedy earliest matching decides existence; `count`
// repeats the greedy scan after each complete match.
ChainMatch chain_covered(const graphs::Chain& chain, std::span<const runtime::CdEvent> events);

// Per-trace lookup from dependence edge to the timestamps where it fired, so
// many chains can be matched against one trace without rescanning it.
class EventIndex
{
  public:
    explicit EventIndex(std::span<const runtime::CdEvent> events);
    [[nodiscard]] ChainMatch match(const graphs::Chain& chain) const;

  private:
    std::unordered_map<std::uint64_t, std::vector<std::int64_t>> times_;
};

// Per-test executions of a suite with dependence events and statement
// coverage recorded.
struct SuiteProfile
{
    std::vector<runtime::ExecutionResult> runs;
    std::vector<lang::Verdict> verdicts;

    [[nodiscard]] std::size_t size() const noexcept { return runs.size(); }
    [[nodiscard]] bool covers(std::size_t test, StatementId s) const { return runs[test].statement_hits[s.index()] > 0; }
};

SuiteProfile collect_profiles(const runtime::Executor& executor, const lang::TestSuite& suite,
                              const runtime::ExecConfig& config = {}, int jobs = 1);

struct ChainCoverageMatrix
{
    std::vector<graphs::Chain> chains;
    std::vector<std::vector<std::uint8_t>> covered; // [chain][test]
    std::vector<std::vector<std::int64_t>> counts;  // [chain][test]
    std::vector<lang::Verdict> verdicts;

    [[nodiscard]] std::size_t test_count() const noexcept { return verdicts.size(); }
};

struct ProfileLimits
{
    std::size_t max_static_chains = graphs::kDefaultMaxStaticChains;
    double budget_seconds = 60.0;
};

// Enumerates every static chain of `length` and matches it against each test
// trace. Throws FeasibilityError if enumeration or matching exceeds `limits`.
ChainCoverageMatrix profile_suite(const graphs::Cdg& cdg, const SuiteProfile& profile, int length,
                                  const ProfileLimits& limits = {});

} // namespace acdc::localize
