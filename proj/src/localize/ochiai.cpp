#include "acdc/localize/ochiai.hpp"

#include <algorithm>
#include <cmath>

#include "acdc/error.hpp"

namespace acdc::localize {

double ochiai(std::size_t a_ef, std::size_t a_ep, std::size_t failed_total)
{
    if (a_ef == 0 || failed_total == 0)
        return 0.0;
    const double m = static_cast<double>(a_ef) /
                     std::sqrt(static_cast<double>(failed_total) * static_cast<double>(a_ef + a_ep));
    return std::min(m, 1.0);
}

std::vector<ChainScore> ochiai(const ChainCoverageMatrix& matrix)
{
    const auto failed = static_cast<std::size_t>(
        std::count(matrix.verdicts.begin(), matrix.verdicts.end(), lang::Verdict::Fail));
    if (failed == 0)
        throw Error("nothing to localize: the suite has no failing test");

    std::vector<ChainScore> scores;
    for (std::size_t c = 0; c < matrix.chains.size(); ++c) {
        ChainScore s{matrix.chains[c], 0.0, 0, 0};
        for (std::size_t t = 0; t < matrix.test_count(); ++t) {
            if (!matrix.covered[c][t])
                continue;
            if (matrix.verdicts[t] == lang::Verdict::Fail)
                ++s.a_ef;
            else
                ++s.a_ep;
        }
        if (s.a_ef + s.a_ep == 0)
            continue;
        s.m = ochiai(s.a_ef, s.a_ep, failed);
        scores.push_back(std::move(s));
    }
    std::stable_sort(scores.begin(), scores.end(), [](const ChainScore& a, const ChainScore& b) {
        if (a.m != b.m)
            return a.m > b.m;
        return a.chain < b.chain;
    });
    return scores;
}

} // namespace acdc::localize
