#include "acdc/graphs/cfg.hpp"

namespace acdc::graphs {

std::vector<std::vector<int>> Cfg::predecessors() const
{
    std::vector<std::vector<int>> pred(succ.size());
    for (std::size_t from = 0; from < succ.size(); ++from)
        for (const CfgEdge& e : succ[from])
            pred[static_cast<std::size_t>(e.to)].push_back(static_cast<int>(from));
    return pred;
}

Cfg Cfg::with_nodes(int statement_count)
{
    Cfg cfg;
    for (int i = 0; i < statement_count; ++i)
        cfg.statements.emplace_back(i);
    cfg.entry = statement_count;
    cfg.exit = statement_count + 1;
    cfg.succ.resize(static_cast<std::size_t>(statement_count) + 2);
    return cfg;
}

void Cfg::add_edge(int from, int to, EdgeLabel label)
{
    succ.at(static_cast<std::size_t>(from)).push_back({to, label});
}

namespace {

class Lowering
{
  public:
    Lowering(const lang::FunctionDecl& f, Cfg& cfg) : first_(f.first_statement.value), cfg_(cfg) {}

    int lower_list(const std::vector<std::unique_ptr<lang::Stmt>>& body, int follow)
    {
        int entry = follow;
        for (auto it = body.rbegin(); it != body.rend(); ++it)
            entry = lower(**it, entry);
        return entry;
    }

  private:
    int node(const lang::Stmt& s) const { return s.id.value - first_; }

    int lower(const lang::Stmt& s, int follow)
    {
        const int n = node(s);
        switch (s.kind) {
        case lang::Stmt::Kind::If: {
            const int then_entry = lower_list(s.then_body, follow);
            const int else_entry = s.has_else ? lower_list(s.else_body, follow) : follow;
            cfg_.add_edge(n, then_entry, EdgeLabel::True);
            cfg_.add_edge(n, else_entry, EdgeLabel::False);
            break;
        }
        case lang::Stmt::Kind::While: {
            const int body_entry = lower_list(s.then_body, n);
            cfg_.add_edge(n, body_entry, EdgeLabel::True);
            cfg_.add_edge(n, follow, EdgeLabel::False);
            break;
        }
        case lang::Stmt::Kind::Return:
            cfg_.add_edge(n, cfg_.exit);
            break;
        default:
            cfg_.add_edge(n, follow);
            break;
        }
        return n;
    }

    std::int32_t first_;
    Cfg& cfg_;
};

} // namespace

Cfg build_cfg(const lang::Program& program, int function)
{
    const lang::FunctionDecl& f = program.function(function);
    Cfg cfg = Cfg::with_nodes(f.statement_count);
    for (int i = 0; i < f.statement_count; ++i)
        cfg.statements[static_cast<std::size_t>(i)] = StatementId(f.first_statement.value + i);
    Lowering lowering(f, cfg);
    const int body_entry = lowering.lower_list(f.body, cfg.exit);
    cfg.add_edge(cfg.entry, body_entry, EdgeLabel::True);
    cfg.add_edge(cfg.entry, cfg.exit, EdgeLabel::False);
    return cfg;
}

} // namespace acdc::graphs
