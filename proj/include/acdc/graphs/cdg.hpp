#pragma once

#include <utility>
#include <vector>

#include "acdc/graphs/cfg.hpp"
#include "acdc/graphs/postdom.hpp"

namespace acdc::graphs {

using CdEdge = std::pair<StatementId, StatementId>;

// Direct control dependences between statements. An edge (a, b) means b is
// directly control-dependent on predicate a. Loop predicates carry a
// self-edge. Adjacency lists are sorted.
class Cdg
{
  public:
    Cdg() = default;
    explicit Cdg(std::size_t statement_count) : children_(statement_count), parents_(statement_count) {}

    void add_edge(StatementId from, StatementId to);
    void merge(const Cdg& other);

    [[nodiscard]] const std::vector<StatementId>& children(StatementId s) const { return children_.at(s.index()); }
    [[nodiscard]] const std::vector<StatementId>& parents(StatementId s) const { return parents_.at(s.index()); }
    [[nodiscard]] bool has_edge(StatementId from, StatementId to) const;
    [[nodiscard]] std::vector<CdEdge> edges() const;
    [[nodiscard]] bool empty() const;
    [[nodiscard]] std::size_t size() const noexcept { return children_.size(); }

  private:
    void grow(std::size_t n);

    std::vector<std::vector<StatementId>> children_;
    std::vector<std::vector<StatementId>> parents_;
};

// Ferrante-Ottenstein-Warren: for every CFG edge (a, b) where b does not
// postdominate a, each node on the postdominator-tree path from b up to (but
// excluding) ipdom(a) is control-dependent on a. Dependences on ENTRY are
// dropped since ENTRY is not a predicate statement.
Cdg control_dependences(const Cfg& cfg, const PostDomTree& pdt);

// Union of the per-function dependence graphs, sized to the program.
Cdg build_program_cdg(const lang::Program& program);

} // namespace acdc::graphs
