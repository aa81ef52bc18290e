#pragma once

#include <cstddef>
#include <vector>

#include "acdc/graphs/chains.hpp"
#include "acdc/localize/coverage.hpp"

namespace acdc::localize {

struct ChainScore
{
    graphs::Chain chain;
    double m = 0.0;
    std::size_t a_ef = 0; // failing tests covering the chain
    std::size_t a_ep = 0; // passing tests covering the chain
};

// a_ef / sqrt(F * (a_ef + a_ep)); 0 when a_ef is 0.
double ochiai(std::size_t a_ef, std::size_t a_ep, std::size_t failed_total);

// Scores every chain covered by at least one test, sorted by M descending
// with ties broken by node sequence. Throws acdc::Error if the matrix has no
// failing test.
std::vector<ChainScore> ochiai(const ChainCoverageMatrix& matrix);

} // namespace acdc::localize
