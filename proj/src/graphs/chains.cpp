#include "acdc/graphs/chains.hpp"

#include <algorithm>

#include "acdc/error.hpp"

namespace acdc::graphs {

bool Chain::extends(const Chain& other) const
{
    return nodes.size() > other.nodes.size() && std::equal(other.nodes.begin(), other.nodes.end(), nodes.begin());
}

std::string to_string(const Chain& chain)
{
    std::string out = "(";
    for (std::size_t i = 0; i < chain.nodes.size(); ++i) {
        if (i > 0)
            out += ",";
        out += std::to_string(chain.nodes[i].value);
    }
    out += ")";
    return out;
}

namespace {

void extend(const Cdg& cdg, Chain& prefix, int remaining, std::size_t cap, std::vector<Chain>& out)
{
    if (remaining == 0) {
        if (out.size() >= cap)
            throw FeasibilityError("chain enumeration exceeded " + std::to_string(cap) + " static chains of length " +
                                   std::to_string(prefix.length()));
        out.push_back(prefix);
        return;
    }
    for (StatementId next : cdg.children(prefix.tail())) {
        prefix.nodes.push_back(next);
        extend(cdg, prefix, remaining - 1, cap, out);
        prefix.nodes.pop_back();
    }
}

} // namespace

std::vector<Chain> enumerate_chains(const Cdg& cdg, int length, std::size_t max_chains)
{
    if (length < 1)
        throw Error("chain length must be at least 1");
    std::vector<Chain> out;
    for (std::size_t i = 0; i < cdg.size(); ++i) {
        const StatementId head(static_cast<std::int32_t>(i));
        if (cdg.children(head).empty())
            continue;
        Chain prefix{{head}};
        extend(cdg, prefix, length, max_chains, out);
    }
    // DFS from ascending heads over sorted children already yields sorted,
    // duplicate-free output.
    return out;
}

} // namespace acdc::graphs
