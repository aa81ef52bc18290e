#include "acdc/localize/coverage.hpp"

#include <algorithm>
#include <chrono>
#include <limits>

#include "acdc/error.hpp"
#include "acdc/parallel.hpp"

namespace acdc::localize {

namespace {

std::uint64_t edge_key(StatementId a, StatementId b)
{
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a.value)) << 32) |
           static_cast<std::uint32_t>(b.value);
}

} // namespace

ChainMatch chain_covered(const graphs::Chain& chain, std::span<const runtime::CdEvent> events)
{
    ChainMatch m;
    const std::size_t edges = chain.nodes.size() - 1;
    std::size_t next = 0;
    std::int64_t last = std::numeric_limits<std::int64_t>::min();
    for (const auto& e : events) {
        if (e.timestamp > last && e.parent == chain.nodes[next] && e.child == chain.nodes[next + 1]) {
            last = e.timestamp;
            if (++next == edges) {
                ++m.count;
                next = 0;
            }
        }
    }
    m.covered = m.count > 0;
    return m;
}

EventIndex::EventIndex(std::span<const runtime::CdEvent> events)
{
    for (const auto& e : events)
        times_[edge_key(e.parent, e.child)].push_back(e.timestamp);
}

ChainMatch EventIndex::match(const graphs::Chain& chain) const
{
    ChainMatch m;
    std::vector<const std::vector<std::int64_t>*> lists;
    lists.reserve(chain.nodes.size());
    for (std::size_t i = 0; i + 1 < chain.nodes.size(); ++i) {
        auto it = times_.find(edge_key(chain.nodes[i], chain.nodes[i + 1]));
        if (it == times_.end())
            return m;
        lists.push_back(&it->second);
    }
    std::int64_t after = std::numeric_limits<std::int64_t>::min();
    for (;;) {
        for (const auto* times : lists) {
            auto it = std::upper_bound(times->begin(), times->end(), after);
            if (it == times->end()) {
                m.covered = m.count > 0;
                return m;
            }
            after = *it;
        }
        ++m.count;
    }
}

SuiteProfile collect_profiles(const runtime::Executor& executor, const lang::TestSuite& suite,
                              const runtime::ExecConfig& config, int jobs)
{
    runtime::ExecConfig cfg = config;
    cfg.record_events = true;
    cfg.record_coverage = true;
    SuiteProfile profile;
    profile.runs.resize(suite.cases.size());
    parallel_for(suite.cases.size(), jobs,
                 [&](std::size_t i) { profile.runs[i] = executor.execute(suite.cases[i], cfg); });
    profile.verdicts.reserve(profile.runs.size());
    for (const auto& r : profile.runs)
        profile.verdicts.push_back(r.verdict);
    return profile;
}

ChainCoverageMatrix profile_suite(const graphs::Cdg& cdg, const SuiteProfile& profile, int length,
                                  const ProfileLimits& limits)
{
    using Clock = std::chrono::steady_clock;
    const auto start = Clock::now();
    auto check_budget = [&] {
        const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
        if (elapsed > limits.budget_seconds)
            throw FeasibilityError("profiling chains of length " + std::to_string(length) + " exceeded " +
                                   std::to_string(limits.budget_seconds) + " s");
    };

    ChainCoverageMatrix matrix;
    matrix.chains = graphs::enumerate_chains(cdg, length, limits.max_static_chains);
    matrix.verdicts = profile.verdicts;
    const std::size_t tests = profile.size();
    matrix.covered.assign(matrix.chains.size(), std::vector<std::uint8_t>(tests, 0));
    matrix.counts.assign(matrix.chains.size(), std::vector<std::int64_t>(tests, 0));
    for (std::size_t t = 0; t < tests; ++t) {
        const EventIndex index(profile.runs[t].events);
        for (std::size_t c = 0; c < matrix.chains.size(); ++c) {
            const ChainMatch m = index.match(matrix.chains[c]);
            matrix.covered[c][t] = m.covered ? 1 : 0;
            matrix.counts[c][t] = m.count;
            if ((c & 1023) == 1023)
                check_budget();
        }
        check_budget();
    }
    return matrix;
}

} // namespace acdc::localize
