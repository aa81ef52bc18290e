#include "acdc/graphs/dot.hpp"

#include <sstream>

#include "acdc/lang/printer.hpp"

namespace acdc::graphs {

namespace {

std::string escape(std::string_view s)
{
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\')
            out.push_back('\\');
        out.push_back(c == '\n' ? ' ' : c);
    }
    return out;
}

} // namespace

std::string to_dot(const lang::Program& program)
{
    std::ostringstream os;
    os << "digraph acdc {\n";
    for (std::size_t f = 0; f < program.functions.size(); ++f) {
        const auto& fn = program.functions[f];
        const Cfg cfg = build_cfg(program, static_cast<int>(f));
        const Cdg cdg = control_dependences(cfg, postdominators(cfg));
        const std::string prefix = "f" + std::to_string(f) + "_";
        os << "  subgraph cluster_" << f << " {\n    label=\"" << escape(fn.name) << "\";\n";
        os << "    " << prefix << "entry [label=\"ENTRY\", shape=box];\n";
        os << "    " << prefix << "exit [label=\"EXIT\", shape=box];\n";
        for (StatementId s : cfg.statements) {
            const auto& info = program.statement(s);
            std::string label = std::to_string(s.value) + ": " + lang::to_string(info.kind);
            if (info.predicate.valid())
                label += " " + lang::print_expr(*info.node->cond);
            os << "    s" << s.value << " [label=\"" << escape(label) << "\"];\n";
        }
        auto name = [&](int node) -> std::string {
            if (node == cfg.entry)
                return prefix + "entry";
            if (node == cfg.exit)
                return prefix + "exit";
            return "s" + std::to_string(cfg.statements[static_cast<std::size_t>(node)].value);
        };
        for (int n = 0; n < cfg.node_count(); ++n) {
            for (const CfgEdge& e : cfg.succ[static_cast<std::size_t>(n)]) {
                os << "    " << name(n) << " -> " << name(e.to);
                if (e.label == EdgeLabel::True)
                    os << " [label=\"T\"]";
                else if (e.label == EdgeLabel::False)
                    os << " [label=\"F\"]";
                os << ";\n";
            }
        }
        for (const auto& [a, b] : cdg.edges())
            os << "    s" << a.value << " -> s" << b.value << " [style=dashed, color=blue];\n";
        os << "  }\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace acdc::graphs
