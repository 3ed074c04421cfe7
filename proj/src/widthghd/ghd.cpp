#include "degjoin/ghd.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "degjoin/bounds.hpp"
#include "degjoin/subset_paths.hpp"

namespace degjoin {

namespace {

/// Drops bags contained in another bag and sorts the rest.
std::vector<AttrSet> reduce_family(std::vector<AttrSet> bags) {
    std::sort(bags.begin(), bags.end());
    bags.erase(std::unique(bags.begin(), bags.end()), bags.end());
    std::vector<AttrSet> out;
    for (std::size_t i = 0; i < bags.size(); ++i) {
        bool inside = false;
        for (std::size_t j = 0; j < bags.size() && !inside; ++j)
            inside = j != i && bags[i].subset_of(bags[j]);
        if (!inside) out.push_back(bags[i]);
    }
    return out;
}

}  // namespace

std::vector<AttrSet> bag_family(const GHD& g) {
    auto bags = g.bags;
    std::sort(bags.begin(), bags.end());
    return bags;
}

std::string check_ghd(const GHD& g, const std::vector<AttrSet>& edges) {
    const int n = static_cast<int>(g.bags.size());
    if (static_cast<int>(g.parent.size()) != n) return "parent array size mismatch";
    // Forest check: following parents from any node terminates.
    for (int i = 0; i < n; ++i) {
        int steps = 0;
        for (int u = i; u >= 0; u = g.parent[u]) {
            if (u >= n) return "parent index out of range";
            if (++steps > n) return "parent pointers contain a cycle";
        }
    }
    int roots = 0;
    for (int p : g.parent) roots += p < 0;
    if (n > 0 && roots != 1) return "decomposition is not a single tree";
    for (std::size_t e = 0; e < edges.size(); ++e) {
        bool covered = false;
        for (const auto& b : g.bags) covered = covered || edges[e].subset_of(b);
        if (!covered) return "edge " + std::to_string(e) + " not contained in any bag";
    }
    AttrSet all;
    for (const auto& b : g.bags) all |= b;
    for (AttrId a : all) {
        // Nodes holding `a` must form a connected subtree: exactly one of them
        // has a parent that does not hold `a`.
        int tops = 0;
        for (int i = 0; i < n; ++i)
            if (g.bags[i].contains(a) && (g.parent[i] < 0 || !g.bags[g.parent[i]].contains(a))) ++tops;
        if (tops != 1) return "attribute " + std::to_string(a) + " violates running intersection";
    }
    return "";
}

GHD tree_from_bags(std::vector<AttrSet> bags) {
    GHD g;
    const int n = static_cast<int>(bags.size());
    g.bags = std::move(bags);
    g.parent.assign(n, -1);
    if (n == 0) return g;
    // Prim's algorithm rooted at node 0; ties by lowest index.
    std::vector<bool> in(n, false);
    std::vector<int> best_w(n, -1), best_p(n, -1);
    in[0] = true;
    for (int v = 1; v < n; ++v) {
        best_w[v] = (g.bags[0] & g.bags[v]).size();
        best_p[v] = 0;
    }
    for (int step = 1; step < n; ++step) {
        int pick = -1;
        for (int v = 0; v < n; ++v)
            if (!in[v] && (pick < 0 || best_w[v] > best_w[pick])) pick = v;
        in[pick] = true;
        g.parent[pick] = best_p[pick];
        for (int v = 0; v < n; ++v) {
            if (in[v]) continue;
            int w = (g.bags[pick] & g.bags[v]).size();
            if (w > best_w[v]) {
                best_w[v] = w;
                best_p[v] = pick;
            }
        }
    }
    return g;
}

std::vector<GHD> enumerate_ghds(const std::vector<AttrSet>& edges, int max_bags) {
    AttrSet all;
    for (const auto& e : edges) all |= e;
    if (all.size() > kMaxGhdAttrs)
        throw WidthError("GHD enumeration refused: " + std::to_string(all.size()) + " attributes exceeds limit of " +
                         std::to_string(kMaxGhdAttrs));
    std::vector<AttrId> verts = all.to_vector();
    std::vector<AttrSet> adj(kMaxAttrs);
    for (const auto& e : edges)
        for (AttrId a : e) adj[a] |= e - AttrSet::single(a);

    std::set<std::vector<AttrSet>> families;
    std::vector<AttrId> order = verts;
    do {
        auto g = adj;
        std::vector<AttrSet> bags;
        AttrSet gone;
        for (AttrId v : order) {
            AttrSet nb = g[v] - gone;
            bags.push_back(nb | AttrSet::single(v));
            for (AttrId u : nb) g[u] |= nb - AttrSet::single(u);
            gone.insert(v);
        }
        families.insert(reduce_family(std::move(bags)));
    } while (std::next_permutation(order.begin(), order.end()));
    if (verts.empty()) families.insert({});

    // Coarsenings: contract every subset of tree edges.
    std::set<std::vector<AttrSet>> seen;
    std::vector<GHD> out;
    auto emit = [&](std::vector<AttrSet> fam) {
        fam = reduce_family(std::move(fam));
        if (static_cast<int>(fam.size()) > std::max(1, max_bags)) return;
        if (!seen.insert(fam).second) return;
        GHD g = tree_from_bags(fam);
        if (check_ghd(g, edges).empty()) out.push_back(std::move(g));
    };
    for (const auto& fam : families) {
        GHD base = tree_from_bags(fam);
        const int n = static_cast<int>(base.size());
        std::vector<int> tree_edges;
        for (int i = 0; i < n; ++i)
            if (base.parent[i] >= 0) tree_edges.push_back(i);
        const int k = static_cast<int>(tree_edges.size());
        for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
            // Union-find over contracted edges.
            std::vector<int> root(n);
            std::iota(root.begin(), root.end(), 0);
            std::function<int(int)> find = [&](int x) { return root[x] == x ? x : root[x] = find(root[x]); };
            for (int j = 0; j < k; ++j)
                if ((mask >> j) & 1u) root[find(tree_edges[j])] = find(base.parent[tree_edges[j]]);
            std::vector<AttrSet> merged(n);
            for (int i = 0; i < n; ++i) merged[find(i)] |= base.bags[i];
            std::vector<AttrSet> fam2;
            for (int i = 0; i < n; ++i)
                if (find(i) == i) fam2.push_back(merged[i]);
            emit(std::move(fam2));
        }
    }
    std::sort(out.begin(), out.end(), [](const GHD& a, const GHD& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return bag_family(a) < bag_family(b);
    });
    return out;
}

double fhw_log(const std::vector<RelStats>& stats, const std::vector<GHD>& ghds, std::size_t* best) {
    double result = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < ghds.size(); ++i) {
        double width = -std::numeric_limits<double>::infinity();
        for (const auto& bag : ghds[i].bags) {
            std::vector<RelStats> inside;
            for (const auto& r : stats)
                if (r.schema.intersects(bag)) inside.push_back(r);
            width = std::max(width, agm_log(inside, bag));
        }
        if (width < result - 1e-12) {
            result = width;
            if (best) *best = i;
        }
    }
    return result;
}

double fhw_log(const std::vector<RelStats>& stats, int max_bags) {
    std::vector<AttrSet> edges;
    for (const auto& r : stats) edges.push_back(r.schema);
    return fhw_log(stats, enumerate_ghds(edges, max_bags));
}

double mw_log(const std::vector<RelStats>& stats, const std::vector<GHD>& ghds, std::size_t* best) {
    AttrSet all;
    for (const auto& r : stats) all |= r.schema;
    SubsetPaths sp(stats, all, {});
    double result = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < ghds.size(); ++i) {
        double width = 0;
        for (const auto& bag : ghds[i].bags) width = std::max(width, sp.distance(bag));
        if (width < result - 1e-12) {
            result = width;
            if (best) *best = i;
        }
    }
    return result;
}

WidthReport m_width(const PartitionedQuery& pq, int max_bags) {
    WidthReport rep;
    rep.in_size = pq.in_size();
    const double log_in = rep.in_size > 1 ? std::log(rep.in_size) : 1.0;
    std::vector<AttrSet> edges;
    for (const auto& r : pq.query.rels) edges.push_back(r.schema());
    auto ghds = enumerate_ghds(edges, max_bags);
    std::size_t best = 0;
    rep.fhw = fhw_log(log_stats(pq.query), ghds, &best) / log_in;
    if (!ghds.empty()) rep.fhw_ghd = ghds[best];
    rep.m_width = 0;
    for (std::size_t c : pq.live_configs()) {
        ConfigWidth cw;
        cw.config = c;
        std::size_t b = 0;
        cw.mw_log = mw_log(pq.config_stats(c), ghds, &b);
        cw.ghd = ghds.at(b);
        rep.m_width = std::max(rep.m_width, cw.mw_log / log_in);
        rep.configs.push_back(std::move(cw));
    }
    return rep;
}

Relation chain_materialize(const std::vector<Relation>& rels, const std::vector<RelStats>& stats, AttrSet target) {
    AttrSet all;
    for (const auto& r : stats) all |= r.schema;
    SubsetPaths sp(stats, all, {});
    Relation cur = Relation::unit();
    for (const PathStep& step : sp.chain(target)) {
        if (step.rel < 0)
            cur = project(cur, step.to);
        else
            cur = project(natural_join(cur, project(rels[step.rel], step.extend)), step.to);
    }
    return cur;
}

Relation ghd_execute_config(const Query& q, const GHD& g) {
    auto stats = log_stats(q);
    std::vector<Relation> bags;
    for (const auto& bag : g.bags) {
        Relation rb = chain_materialize(q.rels, stats, bag);
        for (const auto& r : q.rels)
            if (r.schema().intersects(bag)) rb = semijoin(rb, project(r, r.schema() & bag));
        bags.push_back(std::move(rb));
    }
    JoinTree jt;
    jt.parent = g.parent;
    jt.order = leaves_first(g.parent);
    return yannakakis(bags, jt, q.output);
}

Relation ghd_execute(const PartitionedQuery& pq, const std::vector<GHD>& per_config) {
    Relation result(pq.query.output);
    auto live = pq.live_configs();
    for (std::size_t i = 0; i < live.size(); ++i)
        result = set_union(result, ghd_execute_config(pq.config_query(live[i]), per_config.at(i)));
    return result;
}

Relation ghd_execute(const PartitionedQuery& pq, int max_bags) {
    std::vector<AttrSet> edges;
    for (const auto& r : pq.query.rels) edges.push_back(r.schema());
    auto ghds = enumerate_ghds(edges, max_bags);
    std::vector<GHD> chosen;
    for (std::size_t c : pq.live_configs()) {
        std::size_t b = 0;
        mw_log(pq.config_stats(c), ghds, &b);
        chosen.push_back(ghds.at(b));
    }
    return ghd_execute(pq, chosen);
}

}  // namespace degjoin
