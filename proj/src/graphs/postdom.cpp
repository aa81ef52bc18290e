#include "acdc/graphs/postdom.hpp"

#include <stdexcept>

namespace acdc::graphs {

bool PostDomTree::postdominates(int d, int n) const
{
    for (int cur = n; cur != -1; cur = ipdom[static_cast<std::size_t>(cur)]) {
        if (cur == d)
            return true;
    }
    return false;
}

PostDomTree postdominators(const Cfg& cfg)
{
    const int n = cfg.node_count();
    const auto pred = cfg.predecessors();

    // Postorder of the reverse graph rooted at EXIT.
    std::vector<int> order;
    std::vector<int> number(static_cast<std::size_t>(n), -1);
    {
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        std::vector<std::pair<int, std::size_t>> stack{{cfg.exit, 0}};
        seen[static_cast<std::size_t>(cfg.exit)] = 1;
        while (!stack.empty()) {
            auto& [v, next] = stack.back();
            const auto& ps = pred[static_cast<std::size_t>(v)];
            if (next < ps.size()) {
                const int w = ps[next++];
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    stack.emplace_back(w, 0);
                }
            } else {
                number[static_cast<std::size_t>(v)] = static_cast<int>(order.size());
                order.push_back(v);
                stack.pop_back();
            }
        }
    }
    if (static_cast<int>(order.size()) != n)
        throw std::logic_error("postdominators: some CFG node cannot reach EXIT");

    std::vector<int> idom(static_cast<std::size_t>(n), -1);
    idom[static_cast<std::size_t>(cfg.exit)] = cfg.exit;

    auto intersect = [&](int a, int b) {
        while (a != b) {
            while (number[static_cast<std::size_t>(a)] < number[static_cast<std::size_t>(b)])
                a = idom[static_cast<std::size_t>(a)];
            while (number[static_cast<std::size_t>(b)] < number[static_cast<std::size_t>(a)])
                b = idom[static_cast<std::size_t>(b)];
        }
        return a;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        // Reverse postorder, skipping EXIT. In the reverse graph a node's
        // "predecessors" are its CFG successors.
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            const int v = *it;
            if (v == cfg.exit)
                continue;
            int new_idom = -1;
            for (const CfgEdge& e : cfg.succ[static_cast<std::size_t>(v)]) {
                if (idom[static_cast<std::size_t>(e.to)] == -1)
                    continue;
                new_idom = new_idom == -1 ? e.to : intersect(e.to, new_idom);
            }
            if (new_idom != idom[static_cast<std::size_t>(v)]) {
                idom[static_cast<std::size_t>(v)] = new_idom;
                changed = true;
            }
        }
    }

    PostDomTree tree;
    tree.root = cfg.exit;
    tree.ipdom = std::move(idom);
    tree.ipdom[static_cast<std::size_t>(cfg.exit)] = -1;
    return tree;
}

} // namespace acdc::graphs
