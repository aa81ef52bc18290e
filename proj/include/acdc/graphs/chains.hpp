#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "acdc/graphs/cdg.hpp"

namespace acdc::graphs {

// A sequence of statements linked by consecutive direct control dependences.
struct Chain
{
    std::vector<StatementId> nodes;

    [[nodiscard]] int length() const noexcept { return static_cast<int>(nodes.size()) - 1; }
    [[nodiscard]] StatementId head() const { return nodes.front(); }
    [[nodiscard]] StatementId tail() const { return nodes.back(); }

    // True iff this chain is strictly longer than `other` and starts with it.
    [[nodiscard]] bool extends(const Chain& other) const;

    friend auto operator<=>(const Chain&, const Chain&) = default;
    friend bool operator==(const Chain&, const Chain&) = default;
};

std::string to_string(const Chain& chain);

inline constexpr std::size_t kDefaultMaxStaticChains = 100000;

// All distinct node sequences made of exactly `length` consecutive Cdg edges,
// sorted lexicographically. Throws FeasibilityError when more than
// `max_chains` would be produced.
std::vector<Chain> enumerate_chains(const Cdg& cdg, int length, std::size_t max_chains = kDefaultMaxStaticChains);

} // namespace acdc::graphs
