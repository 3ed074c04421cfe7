#include <algorithm>
#include <functional>

#include "degjoin/ghd.hpp"

namespace degjoin {

std::optional<JoinTree> gyo_acyclic(const std::vector<AttrSet>& edges) {
    const int n = static_cast<int>(edges.size());
    JoinTree jt;
    jt.parent.assign(n, -1);
    std::vector<bool> alive(n, true);
    int remaining = n;
    while (remaining > 1) {
        bool removed = false;
        for (int e = 0; e < n && !removed; ++e) {
            if (!alive[e]) continue;
            AttrSet shared;
            for (int f = 0; f < n; ++f)
                if (f != e && alive[f]) shared |= edges[f] & edges[e];
            for (int f = 0; f < n; ++f) {
                if (f == e || !alive[f]) continue;
                if (shared.subset_of(edges[f])) {
                    jt.parent[e] = f;
                    alive[e] = false;
                    jt.order.push_back(e);
                    --remaining;
                    removed = true;
                    break;
                }
            }
        }
        if (!removed) return std::nullopt;
    }
    for (int e = 0; e < n; ++e)
        if (alive[e]) jt.order.push_back(e);
    return jt;
}

std::vector<int> leaves_first(const std::vector<int>& parent) {
    const int n = static_cast<int>(parent.size());
    std::vector<std::vector<int>> kids(n);
    std::vector<int> roots;
    for (int i = 0; i < n; ++i) {
        if (parent[i] < 0)
            roots.push_back(i);
        else
            kids[parent[i]].push_back(i);
    }
    std::vector<int> order;
    std::function<void(int)> visit = [&](int u) {
        for (int k : kids[u]) visit(k);
        order.push_back(u);
    };
    for (int r : roots) visit(r);
    return order;
}

Relation yannakakis(const std::vector<Relation>& rels, const JoinTree& jt, AttrSet output) {
    const int n = static_cast<int>(rels.size());
    if (n == 0) return Relation::unit();
    std::vector<Relation> cur = rels;
    const auto& order = jt.order;
    // Bottom-up then top-down semijoin passes.
    for (int u : order)
        if (jt.parent[u] >= 0) cur[jt.parent[u]] = semijoin(cur[jt.parent[u]], cur[u]);
    for (auto it = order.rbegin(); it != order.rend(); ++it)
        if (jt.parent[*it] >= 0) cur[*it] = semijoin(cur[*it], cur[jt.parent[*it]]);
    for (const auto& r : cur)
        if (r.empty()) return Relation(output);
    // Bottom-up joins; a child keeps only output attributes and its parent link.
    Relation result = Relation::unit();
    for (int u : order) {
        int p = jt.parent[u];
        if (p < 0) {
            Relation root = project(cur[u], (cur[u].schema() & output) | AttrSet());
            result = natural_join(result, root);
            continue;
        }
        AttrSet keep = (cur[u].schema() & output) | (cur[u].schema() & rels[p].schema());
        cur[p] = natural_join(cur[p], project(cur[u], keep));
    }
    return project(result, output & result.schema());
}

}  // namespace degjoin
