#pragma once

#include <string>
#include <vector>

#include "acdc/ids.hpp"
#include "acdc/lang/program.hpp"

namespace acdc::graphs {

enum class EdgeLabel
{
    None,
    True,
    False,
};

struct CfgEdge
{
    int to = -1;
    EdgeLabel label = EdgeLabel::None;

    friend bool operator==(const CfgEdge&, const CfgEdge&) = default;
};

// Intraprocedural control-flow graph. Node i < statements.size() is the
// statement statements[i]; `entry` and `exit` are the two synthetic nodes.
// ENTRY always carries an auxiliary edge to EXIT.
struct Cfg
{
    std::vector<StatementId> statements;
    int entry = -1;
    int exit = -1;
    std::vector<std::vector<CfgEdge>> succ;

    [[nodiscard]] int node_count() const noexcept { return static_cast<int>(succ.size()); }
    [[nodiscard]] bool is_statement(int node) const noexcept
    {
        return node >= 0 && node < static_cast<int>(statements.size());
    }
    [[nodiscard]] std::vector<std::vector<int>> predecessors() const;

    // Builds a graph over `statement_count` plain nodes plus ENTRY and EXIT.
    // Node i maps to StatementId(i). Used by tests and tools.
    static Cfg with_nodes(int statement_count);
    void add_edge(int from, int to, EdgeLabel label = EdgeLabel::None);
};

Cfg build_cfg(const lang::Program& program, int function);

} // namespace acdc::graphs
