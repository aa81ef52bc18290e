#include "acdc/graphs/cdg.hpp"

#include <algorithm>

namespace acdc::graphs {

namespace {

void insert_sorted(std::vector<StatementId>& v, StatementId id)
{
    auto it = std::lower_bound(v.begin(), v.end(), id);
    if (it == v.end() || *it != id)
        v.insert(it, id);
}

} // namespace

void Cdg::grow(std::size_t n)
{
    if (children_.size() < n) {
        children_.resize(n);
        parents_.resize(n);
    }
}

void Cdg::add_edge(StatementId from, StatementId to)
{
    grow(std::max(from.index(), to.index()) + 1);
    insert_sorted(children_[from.index()], to);
    insert_sorted(parents_[to.index()], from);
}

void Cdg::merge(const Cdg& other)
{
    for (const auto& [a, b] : other.edges())
        add_edge(a, b);
}

bool Cdg::has_edge(StatementId from, StatementId to) const
{
    if (from.index() >= children_.size())
        return false;
    const auto& c = children_[from.index()];
    return std::binary_search(c.begin(), c.end(), to);
}

std::vector<CdEdge> Cdg::edges() const
{
    std::vector<CdEdge> out;
    for (std::size_t i = 0; i < children_.size(); ++i)
        for (StatementId c : children_[i])
            out.emplace_back(StatementId(static_cast<std::int32_t>(i)), c);
    return out;
}

bool Cdg::empty() const
{
    return std::all_of(children_.begin(), children_.end(), [](const auto& c) { return c.empty(); });
}

Cdg control_dependences(const Cfg& cfg, const PostDomTree& pdt)
{
    std::size_t size = 0;
    for (StatementId s : cfg.statements)
        size = std::max(size, s.index() + 1);
    Cdg cdg(size);
    for (int a = 0; a < cfg.node_count(); ++a) {
        if (!cfg.is_statement(a))
            continue;
        const int stop = pdt.ipdom[static_cast<std::size_t>(a)];
        for (const CfgEdge& e : cfg.succ[static_cast<std::size_t>(a)]) {
            // Walk b, ipdom(b), ... until reaching ipdom(a). If b postdominates
            // a the walk is empty.
            for (int cur = e.to; cur != stop && cur != -1; cur = pdt.ipdom[static_cast<std::size_t>(cur)]) {
                if (cfg.is_statement(cur))
                    cdg.add_edge(cfg.statements[static_cast<std::size_t>(a)],
                                 cfg.statements[static_cast<std::size_t>(cur)]);
            }
        }
    }
    return cdg;
}

Cdg build_program_cdg(const lang::Program& program)
{
    Cdg cdg(program.statements.size());
    for (std::size_t f = 0; f < program.functions.size(); ++f) {
        Cfg cfg = build_cfg(program, static_cast<int>(f));
        cdg.merge(control_dependences(cfg, postdominators(cfg)));
    }
    return cdg;
}

} // namespace acdc::graphs
