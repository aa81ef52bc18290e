#include "acdc/localize/localizer.hpp"

#include <algorithm>
#include <set>

#include "acdc/error.hpp"

namespace acdc::localize {

std::string_view to_string(StopReason reason)
{
    switch (reason) {
    case StopReason::PerfectScore:
        return "perfect-score";
    case StopReason::MaxLength:
        return "max-length";
    case StopReason::Infeasible:
        return "infeasible";
    }
    return "?";
}

bool shares_with_passing(const graphs::Chain& chain, const SuiteProfile& profile)
{
    for (std::size_t t = 0; t < profile.size(); ++t) {
        if (profile.verdicts[t] != lang::Verdict::Pass)
            continue;
        for (StatementId s : chain.nodes)
            if (profile.covers(t, s))
                return true;
    }
    return false;
}

LocalizeResult localize(const graphs::Cdg& cdg, const SuiteProfile& profile, const LocalizeConfig& config)
{
    if (std::none_of(profile.verdicts.begin(), profile.verdicts.end(),
                     [](lang::Verdict v) { return v == lang::Verdict::Fail; }))
        throw Error("nothing to localize: the suite has no failing test");
    if (cdg.empty())
        throw Error("nothing to localize: the program has no control dependences");

    LocalizeResult result;
    std::vector<ChainScore> pool; // every kept chain of every completed length
    const ProfileLimits limits{config.max_static_chains, config.profile_budget_secs};
    for (int length = 1; length <= config.max_chain_length; ++length) {
        ChainCoverageMatrix matrix;
        try {
            matrix = profile_suite(cdg, profile, length, limits);
        } catch (const FeasibilityError& e) {
            result.stop = StopReason::Infeasible;
            result.infeasible_reason = e.what();
            break;
        }
        LengthSummary summary{length, matrix.chains.size(), 0, 0, 0};
        std::vector<ChainScore> scores;
        for (auto& s : ochiai(matrix)) {
            ++summary.scored;
            if (!shares_with_passing(s.chain, profile)) {
                ++summary.discarded;
                continue;
            }
            scores.push_back(std::move(s));
        }
        std::vector<ChainScore> perfect;
        for (const auto& s : scores)
            if (s.m >= 1.0 - config.perfect_tolerance)
                perfect.push_back(s);
        summary.perfect = perfect.size();
        result.lengths.push_back(summary);
        if (!perfect.empty()) {
            result.chains = std::move(perfect);
            result.length = length;
            result.stop = StopReason::PerfectScore;
            return result;
        }
        result.length = length;
        pool.insert(pool.end(), std::make_move_iterator(scores.begin()), std::make_move_iterator(scores.end()));
    }
    // Chains of an acyclic region stop existing past its depth, so the
    // fallback ranks across lengths instead of only the deepest one.
    std::stable_sort(pool.begin(), pool.end(), [](const ChainScore& a, const ChainScore& b) {
        if (a.m != b.m)
            return a.m > b.m;
        return a.chain < b.chain;
    });
    if (pool.size() > config.top_k)
        pool.resize(config.top_k);
    result.chains = std::move(pool);
    return result;
}

Refinement refine(const lang::Program& program, const std::vector<ChainScore>& chains,
                  const std::vector<CausalModelFit>& fits, std::size_t top)
{
    auto tau = [&](StatementId s) { return fits.at(s.index()).tau; };
    std::vector<RankedChain> ranked;
    ranked.reserve(chains.size());
    for (const auto& c : chains) {
        double best = tau(c.chain.nodes.front());
        for (StatementId s : c.chain.nodes)
            best = std::max(best, tau(s));
        ranked.push_back({c, best});
    }
    std::stable_sort(ranked.begin(), ranked.end(), [](const RankedChain& a, const RankedChain& b) {
        if (a.max_tau != b.max_tau)
            return a.max_tau > b.max_tau;
        if (a.score.m != b.score.m)
            return a.score.m > b.score.m;
        return a.score.chain < b.score.chain;
    });
    if (ranked.size() > top)
        ranked.resize(top);

    Refinement out;
    std::set<StatementId> seen;
    for (const auto& r : ranked) {
        for (StatementId s : r.score.chain.nodes) {
            const auto& info = program.statement(s);
            if (!info.predicate.valid() || !seen.insert(s).second)
                continue;
            out.predicates.push_back({info.predicate, s, tau(s)});
        }
    }
    std::stable_sort(out.predicates.begin(), out.predicates.end(),
                     [](const SuspiciousPredicate& a, const SuspiciousPredicate& b) {
                         if (a.tau != b.tau)
                             return a.tau > b.tau;
                         return a.predicate < b.predicate;
                     });
    out.top = std::move(ranked);
    return out;
}

LocalizationReport run_localization(const runtime::Executor& executor, const SuiteProfile& profile,
                                    const LocalizeConfig& config)
{
    LocalizationReport report;
    report.localized = localize(executor.cdg(), profile, config);
    const auto& program = executor.program();
    report.fits.reserve(program.statements.size());
    for (std::size_t s = 0; s < program.statements.size(); ++s)
        report.fits.push_back(causal_effect(StatementId(static_cast<std::int32_t>(s)), profile, executor.cdg()));
    report.refined = refine(program, report.localized.chains, report.fits, config.refine_top);
    return report;
}

} // namespace acdc::localize
