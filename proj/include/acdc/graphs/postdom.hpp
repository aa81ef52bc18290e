#pragma once

#include <vector>

#include "acdc/graphs/cfg.hpp"

namespace acdc::graphs {

// Immediate postdominators; ipdom[root] == -1 and root == cfg.exit.
struct PostDomTree
{
    std::vector<int> ipdom;
    int root = -1;

    // Does `d` postdominate `n` (reflexive)?
    [[nodiscard]] bool postdominates(int d, int n) const;
};

// Iterative dataflow (Cooper, Harvey, Kennedy) over the reverse CFG. Throws
// std::logic_error if some node cannot reach EXIT.
PostDomTree postdominators(const Cfg& cfg);

} // namespace acdc::graphs
