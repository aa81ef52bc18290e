#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "acdc/localize/causal.hpp"
#include "acdc/localize/coverage.hpp"
#include "acdc/localize/ochiai.hpp"

namespace acdc::localize {

struct LocalizeConfig
{
    int max_chain_length = 4;
    double profile_budget_secs = 60.0;
    std::size_t top_k = 10;
    std::size_t max_static_chains = graphs::kDefaultMaxStaticChains;
    double perfect_tolerance = 1e-12;
    std::size_t refine_top = 3;
};

struct LengthSummary
{
    int length = 0;
    std::size_t enumerated = 0;
    std::size_t scored = 0;    // executed by at least one test
    std::size_t discarded = 0; // removed by the sharing rule
    std::size_t perfect = 0;
};

enum class StopReason
{
    PerfectScore,
    MaxLength,
    Infeasible,
};

std::string_view to_string(StopReason reason);

struct LocalizeResult
{
    std::vector<ChainScore> chains;
    int length = 0; // last completed length; 0 if none
    StopReason stop = StopReason::MaxLength;
    std::string infeasible_reason;
    std::vector<LengthSummary> lengths;
};

// Sharing rule: a chain is kept only if at least one of its statements is
// executed by some passing run.
bool shares_with_passing(const graphs::Chain& chain, const SuiteProfile& profile);

// Iterative deepening over chain length. Throws acdc::Error ("nothing to
// localize") when the suite has no failing test or the program has no
// control dependences.
LocalizeResult localize(const graphs::Cdg& cdg, const SuiteProfile& profile, const LocalizeConfig& config = {});

struct SuspiciousPredicate
{
    PredicateId predicate;
    StatementId statement;
    double tau = 0.0;
};

struct RankedChain
{
    ChainScore score;
    double max_tau = 0.0;
};

struct Refinement
{
    std::vector<RankedChain> top;
    std::vector<SuspiciousPredicate> predicates; // ranked, most suspicious first
};

// `fits` is indexed by StatementId and must cover every statement of every
// chain.
Refinement refine(const lang::Program& program, const std::vector<ChainScore>& chains,
                  const std::vector<CausalModelFit>& fits, std::size_t top = 3);

struct LocalizationReport
{
    LocalizeResult localized;
    std::vector<CausalModelFit> fits; // one per statement
    Refinement refined;
};

LocalizationReport run_localization(const runtime::Executor& executor, const SuiteProfile& profile,
                                    const LocalizeConfig& config = {});

} // namespace acdc::localize
