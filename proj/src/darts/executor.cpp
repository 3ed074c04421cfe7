#include <algorithm>
#include <numeric>

#include "darts_internal.hpp"
#include "degjoin/darts.hpp"
#include "degjoin/generic_join.hpp"
#include "degjoin/ghd.hpp"

namespace degjoin {

namespace {

/// Drops nullary relations. Returns false when one of them is empty, in which
/// case the join is empty.
bool strip_nullary(std::vector<Relation>& rels) {
    for (const auto& r : rels)
        if (r.arity() == 0 && r.empty()) return false;
    std::erase_if(rels, [](const Relation& r) { return r.arity() == 0; });
    return true;
}

std::uint64_t total_size(const std::vector<Relation>& rels) {
    std::uint64_t s = 0;
    for (const auto& r : rels) s += r.size();
    return s;
}

std::vector<Relation> pick(const std::vector<Relation>& rels, const std::vector<int>& idx) {
    std::vector<Relation> out;
    for (int i : idx) out.push_back(rels[i]);
    return out;
}

Relation exec(const PlanNode& node, std::vector<Relation> rels, std::uint64_t& ops) {
    if (!strip_nullary(rels)) return Relation(node.output);
    if (rels.size() != node.schemas.size())
        throw std::logic_error("execute_plan: relation count does not match the plan");
    for (std::size_t i = 0; i < rels.size(); ++i)
        if (rels[i].schema() != node.schemas[i])
            throw std::logic_error("execute_plan: relation schema does not match the plan");
    ops += total_size(rels);

    Relation result(node.output);
    switch (node.kind) {
        case NodeKind::Base:
            if (rels.empty()) {
                result = Relation::unit();
            } else if (rels.size() == 1) {
                result = project(rels[0], node.output);
            } else {
                auto jt = gyo_acyclic(node.schemas);
                if (!jt) throw std::logic_error("execute_plan: base node is not acyclic");
                result = yannakakis(rels, *jt, node.output);
            }
            break;
        case NodeKind::Heavy: {
            const AttrId x = node.heavy_attr;
            const bool keep = node.output.contains(x);
            const PlanNode& child = *node.children[0];
            RelationBuilder out(node.output);
            std::vector<Value> row;
            for (Value v : heavy_values(rels, x)) {
                Relation part = exec(child, heavy_reduce(rels, x, v), ops);
                const int pos = node.output.rank(x);
                for (std::size_t i = 0; i < part.size(); ++i) {
                    auto r = part.row(i);
                    row.assign(r.begin(), r.end());
                    if (keep) row.insert(row.begin() + pos, v);
                    if (row.empty()) out.add_unit(); else out.add(row);
                }
            }
            result = std::move(out).build();
            break;
        }
        case NodeKind::Light: {
            Relation rx = light_relation(rels, node.light_x, node.light_cover, node.light_v, &ops);
            std::vector<Relation> next;
            for (const auto& r : rels)
                if (!r.schema().subset_of(node.light_x)) next.push_back(r);
            next.push_back(std::move(rx));
            result = exec(*node.children[0], std::move(next), ops);
            break;
        }
        case NodeKind::Split: {
            auto r1 = pick(rels, node.g1);
            auto r2 = pick(rels, node.g2);
            Relation rs = exec(*node.children[0], r1, ops);
            if (node.split_case == 2) {
                r2.push_back(std::move(rs));
                result = exec(*node.children[1], std::move(r2), ops);
            } else {
                r2.push_back(rs);
                Relation o2 = exec(*node.children[2], std::move(r2), ops);
                rs = semijoin(rs, project(o2, node.split_s));
                r1.push_back(std::move(rs));
                Relation o1 = exec(*node.children[1], std::move(r1), ops);
                result = project(natural_join(o1, o2), node.output);
                ops += o1.size() + o2.size();
            }
            break;
        }
    }
    ops += result.size();
    return result;
}

}  // namespace

std::vector<Value> heavy_values(const std::vector<Relation>& rels, AttrId x) {
    std::vector<Value> vals;
    bool first = true;
    for (const auto& r : rels) {
        if (!r.schema().contains(x)) continue;
        auto col = project(r, AttrSet::single(x));
        std::vector<Value> cur(col.data().begin(), col.data().end());
        if (first) {
            vals = std::move(cur);
            first = false;
        } else {
            std::vector<Value> both;
            std::set_intersection(vals.begin(), vals.end(), cur.begin(), cur.end(), std::back_inserter(both));
            vals = std::move(both);
        }
    }
    return vals;
}

std::vector<Relation> heavy_reduce(const std::vector<Relation>& rels, AttrId x, Value v) {
    std::vector<Relation> out;
    for (const auto& r : rels) {
        if (!r.schema().contains(x)) {
            out.push_back(r);
            continue;
        }
        AttrSet rest = r.schema() - AttrSet::single(x);
        if (rest.empty()) continue;
        out.push_back(project(select_eq(r, x, v), rest));
    }
    return out;
}

Relation light_relation(const std::vector<Relation>& rels, AttrSet x, const Cover& cover,
                        const std::vector<double>& v, std::uint64_t* ops) {
    std::vector<Relation> parts;
    for (const auto& item : cover) parts.push_back(project(rels.at(item.rel), item.attrs));
    std::vector<AttrId> order = x.to_vector();
    std::stable_sort(order.begin(), order.end(), [&](AttrId a, AttrId b) {
        double va = a < static_cast<AttrId>(v.size()) ? v[a] : 0.0;
        double vb = b < static_cast<AttrId>(v.size()) ? v[b] : 0.0;
        return va > vb + 1e-12;
    });
    Relation rx = generic_join(parts, order, x, ops);
    for (const auto& r : rels) {
        AttrSet common = r.schema() & x;
        if (common.empty()) continue;
        rx = semijoin(rx, project(r, common));
    }
    return rx;
}

Relation execute_plan(const PlanNode& plan, const std::vector<Relation>& rels, ExecMetrics* m) {
    std::uint64_t ops = 0;
    Relation out = exec(plan, rels, ops);
    if (m) m->ops += ops;
    return out;
}

DartsResult darts_join(const Query& q, PlannerOptions opt) {
    DartsResult res;
    res.output = Relation(q.output);
    PartitionedQuery pq = partition_catalog(q, 2);
    std::vector<AttrSet> edges;
    for (const auto& r : q.rels) edges.push_back(r.schema());
    std::vector<GHD> ghds;
    const bool ghd_ok = q.attrs().size() <= kMaxGhdAttrs;
    if (ghd_ok) ghds = enumerate_ghds(edges, static_cast<int>(std::max<std::size_t>(1, q.rels.size())));

    for (std::size_t c : pq.live_configs()) {
        Query cq = pq.config_query(c);
        DartsConfigMetric metric;
        metric.config = c;
        Relation out(q.output);
        if (!cq.any_empty()) {
            auto stats = pq.config_stats(c);
            try {
                Planner planner(opt);
                auto plan = planner.plan(Subproblem{stats, q.output});
                metric.q_log = plan->bound.q;
                metric.engine = "darts";
                ExecMetrics em;
                out = execute_plan(*plan, cq.rels, &em);
                metric.ops = em.ops;
            } catch (const PlanRefused&) {
                if (ghd_ok && !ghds.empty()) {
                    std::size_t best = 0;
                    metric.q_log = mw_log(stats, ghds, &best);
                    metric.engine = "ghd";
                    out = ghd_execute_config(cq, ghds[best]);
                    metric.ops = static_cast<std::uint64_t>(cq.in_size()) + out.size();
                } else {
                    metric.engine = "generic";
                    std::uint64_t ops = 0;
                    out = generic_join(cq.rels, q.output, &ops);
                    metric.ops = ops;
                }
            }
        } else {
            metric.engine = "empty";
        }
        metric.output = out.size();
        res.ops += metric.ops;
        res.output = set_union(res.output, out);
        res.configs.push_back(metric);
    }
    return res;
}

}  // namespace degjoin
