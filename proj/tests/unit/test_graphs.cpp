#include <gtest/gtest.h>

#include <random>

#include "acdc/error.hpp"
#include "acdc/graphs/cdg.hpp"
#include "acdc/graphs/chains.hpp"
#include "acdc/graphs/postdom.hpp"
#include "acdc/lang/parser.hpp"
#include "oracles.hpp"

using namespace acdc;
using graphs::Chain;

namespace {

Chain chain(std::initializer_list<int> nodes)
{
    Chain c;
    for (int n : nodes)
        c.nodes.emplace_back(n);
    return c;
}

} // namespace

TEST(PostDom, MatchesBruteForceOnRandomGraphs)
{
    std::mt19937_64 rng(7);
    for (int round = 0; round < 150; ++round) {
        const int n = 1 + static_cast<int>(rng() % 12);
        const auto cfg = oracle::random_cfg(rng, n);
        const auto pdt = graphs::postdominators(cfg);
        for (int d = 0; d < cfg.node_count(); ++d)
            for (int v = 0; v < cfg.node_count(); ++v)
                ASSERT_EQ(pdt.postdominates(d, v), oracle::brute_postdominates(cfg, d, v))
                    << "round " << round << " d=" << d << " v=" << v;
    }
}

TEST(ControlDependence, MatchesDefinitionOnRandomGraphs)
{
    std::mt19937_64 rng(11);
    for (int round = 0; round < 150; ++round) {
        const int n = 1 + static_cast<int>(rng() % 12);
        const auto cfg = oracle::random_cfg(rng, n);
        const auto cdg = graphs::control_dependences(cfg, graphs::postdominators(cfg));
        std::vector<std::pair<int, int>> got;
        for (const auto& [a, b] : cdg.edges())
            got.emplace_back(a.value, b.value);
        std::sort(got.begin(), got.end());
        ASSERT_EQ(got, oracle::brute_control_dependences(cfg)) << "round " << round;
    }
}

TEST(ControlDependence, StructuredProgram)
{
    const auto p = lang::parse(R"(func main(n: int) {
    var i: int = 0;
    while (i < n) {
        if (i > 2) {
            print(i);
        }
        i = i + 1;
    }
    print(0);
}
)");
    const auto cdg = graphs::build_program_cdg(p);
    // 0 decl, 1 while, 2 if, 3 print, 4 assign, 5 print
    EXPECT_TRUE(cdg.has_edge(StatementId(1), StatementId(1)));
    EXPECT_TRUE(cdg.has_edge(StatementId(1), StatementId(2)));
    EXPECT_TRUE(cdg.has_edge(StatementId(1), StatementId(4)));
    EXPECT_TRUE(cdg.has_edge(StatementId(2), StatementId(3)));
    EXPECT_FALSE(cdg.has_edge(StatementId(1), StatementId(5)));
    EXPECT_EQ(cdg.edges().size(), 4u);
}

TEST(ControlDependence, EarlyReturnMakesLaterCodeDependent)
{
    const auto p = lang::parse(R"(func main(a: int) {
    if (a < 0) {
        print(0);
        return;
    }
    print(a);
}
)");
    const auto cdg = graphs::build_program_cdg(p);
    EXPECT_TRUE(cdg.has_edge(StatementId(0), StatementId(1)));
    EXPECT_TRUE(cdg.has_edge(StatementId(0), StatementId(3)));
}

TEST(Chains, Enumeration)
{
    graphs::Cdg a(3);
    a.add_edge(StatementId(0), StatementId(1));
    a.add_edge(StatementId(0), StatementId(2));
    EXPECT_EQ(graphs::enumerate_chains(a, 1), (std::vector<Chain>{chain({0, 1}), chain({0, 2})}));

    graphs::Cdg b(3);
    b.add_edge(StatementId(0), StatementId(1));
    b.add_edge(StatementId(1), StatementId(2));
    EXPECT_EQ(graphs::enumerate_chains(b, 2), (std::vector<Chain>{chain({0, 1, 2})}));

    graphs::Cdg loop(2);
    loop.add_edge(StatementId(0), StatementId(0));
    loop.add_edge(StatementId(0), StatementId(1));
    EXPECT_EQ(graphs::enumerate_chains(loop, 2), (std::vector<Chain>{chain({0, 0, 0}), chain({0, 0, 1})}));
}

TEST(Chains, DeeperChainsExtendShallowerOnes)
{
    std::mt19937_64 rng(3);
    for (int round = 0; round < 50; ++round) {
        const auto cdg = oracle::random_cdg(rng, 6, 8);
        for (int len = 1; len < 4; ++len) {
            const auto shorter = graphs::enumerate_chains(cdg, len);
            for (const auto& c : graphs::enumerate_chains(cdg, len + 1)) {
                for (std::size_t i = 0; i + 1 < c.nodes.size(); ++i)
                    ASSERT_TRUE(cdg.has_edge(c.nodes[i], c.nodes[i + 1]));
                Chain prefix;
                prefix.nodes.assign(c.nodes.begin(), c.nodes.end() - 1);
                ASSERT_TRUE(std::binary_search(shorter.begin(), shorter.end(), prefix));
                ASSERT_TRUE(c.extends(prefix));
            }
        }
    }
}

TEST(Chains, CapRaisesFeasibilityError)
{
    graphs::Cdg dense(3);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            dense.add_edge(StatementId(a), StatementId(b));
    EXPECT_EQ(graphs::enumerate_chains(dense, 2).size(), 27u);
    EXPECT_THROW(graphs::enumerate_chains(dense, 6, 1000), FeasibilityError);
}
