#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "degjoin/darts.hpp"
#include "degjoin/ghd.hpp"
#include "degjoin/subset_paths.hpp"
#include "darts_internal.hpp"

namespace degjoin {

namespace detail {

double add_cost(CostMode mode, double a, double b) {
    if (a == kInf || b == kInf) return kInf;
    if (a == -kInf) return b;
    if (b == -kInf) return a;
    double hi = std::max(a, b), lo = std::min(a, b);
    if (mode == CostMode::Symbolic) return hi;
    return hi + std::log1p(std::exp(lo - hi));
}

double in_log(CostMode mode, const std::vector<RelStats>& rels) {
    double s = -kInf;
    for (const auto& r : rels) s = add_cost(mode, s, r.log_size());
    return rels.empty() ? 0.0 : s;
}

Subproblem normalize(Subproblem g) {
    g.rels.erase(std::remove_if(g.rels.begin(), g.rels.end(), [](const RelStats& r) { return r.arity == 0; }),
                 g.rels.end());
    g.output &= g.attrs();
    return g;
}

RelStats restrict_stats(const RelStats& rs, AttrSet keep) {
    RelStats out(rs.schema & keep);
    for_each_subset(out.schema, [&](AttrSet b) {
        for_each_subset(b, [&](AttrSet a) { out.at(a, b) = rs.at(a, b); });
    });
    return out;
}

RelStats derived_stats(const std::vector<RelStats>& rels, AttrSet universe, AttrSet target) {
    RelStats out(target);
    for_each_subset(target, [&](AttrSet a) {
        SubsetPaths sp(rels, universe, a);
        for_each_subset(target, [&](AttrSet b) {
            if (a.subset_of(b)) out.at(a, b) = std::max(0.0, sp.distance(b));
        });
    });
    return out;
}

}  // namespace detail

using namespace detail;

AttrSet Subproblem::attrs() const {
    AttrSet s;
    for (const auto& r : rels) s |= r.schema;
    return s;
}

bool CostBound::has_q() const { return q < kInf; }
bool CostBound::has_p() const { return p < kInf; }

const char* to_string(NodeKind k) {
    switch (k) {
        case NodeKind::Base: return "Base";
        case NodeKind::Heavy: return "Heavy";
        case NodeKind::Light: return "Light";
        case NodeKind::Split: return "Split";
    }
    return "?";
}

bool is_articulation_set(const std::vector<AttrSet>& schemas, AttrSet s) {
    AttrSet all;
    for (const auto& e : schemas) all |= e;
    AttrSet rest = all - s;
    if (rest.empty()) return false;
    AttrSet comp = AttrSet::single(rest.first());
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& e : schemas) {
            AttrSet x = e - s;
            if (x.intersects(comp) && !x.subset_of(comp)) {
                comp |= x;
                grew = true;
            }
        }
    }
    return comp != rest;
}

namespace {

std::string stats_key(const std::vector<RelStats>& rels, AttrSet x) {
    std::string k;
    auto put = [&](auto v) { k.append(reinterpret_cast<const char*>(&v), sizeof v); };
    put(x.bits());
    for (const auto& r : rels) {
        put(r.schema.bits());
        for (double v : r.ld) put(std::llround(v * 1e9));
    }
    return k;
}

}  // namespace

std::vector<Candidate> candidates(const Subproblem& g, CostMode, int max_split,
                                  std::unordered_map<std::string, DbpResult>* dbp_cache) {
    std::vector<Candidate> out;
    const AttrSet all = g.attrs();
    const int n = static_cast<int>(g.rels.size());

    // Heavy on every attribute.
    for (AttrId x : all) {
        Candidate c;
        c.kind = NodeKind::Heavy;
        c.heavy_attr = x;
        double t = kInf;
        Subproblem child;
        for (const auto& rs : g.rels) {
            if (!rs.schema.contains(x)) {
                child.rels.push_back(rs);
                continue;
            }
            t = std::min(t, rs.log_proj(AttrSet::single(x)));
            AttrSet ns = rs.schema - AttrSet::single(x);
            RelStats red(ns);
            AttrSet xs = AttrSet::single(x);
            for_each_subset(ns, [&](AttrSet b) {
                for_each_subset(b, [&](AttrSet a) { red.at(a, b) = rs.at(a | xs, b | xs); });
            });
            child.rels.push_back(std::move(red));
        }
        child.output = g.output - AttrSet::single(x);
        c.term = t;
        c.children.push_back(normalize(std::move(child)));
        out.push_back(std::move(c));
    }

    // Light on unions of at least two relation schemas.
    std::vector<AttrSet> xs;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (std::popcount(mask) < 2) continue;
        AttrSet x;
        for (int i = 0; i < n; ++i)
            if ((mask >> i) & 1u) x |= g.rels[i].schema;
        xs.push_back(x);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    for (AttrSet x : xs) {
        int inside = 0;
        for (const auto& rs : g.rels) inside += rs.schema.subset_of(x);
        if (inside < 2) continue;
        std::vector<RelStats> proj;
        std::vector<int> proj_index;
        for (int i = 0; i < n; ++i) {
            if (!g.rels[i].schema.intersects(x)) continue;
            proj.push_back(restrict_stats(g.rels[i], x));
            proj_index.push_back(i);
        }
        DbpResult dbp;
        if (dbp_cache) {
            auto key = stats_key(proj, x);
            auto it = dbp_cache->find(key);
            if (it == dbp_cache->end()) it = dbp_cache->emplace(std::move(key), dbp_log(proj, x, 1.0)).first;
            dbp = it->second;
        } else {
            dbp = dbp_log(proj, x, 1.0);
        }
        Candidate c;
        c.kind = NodeKind::Light;
        c.light_x = x;
        c.term = dbp.log_value;
        for (auto item : dbp.cover) c.light_cover.push_back({proj_index[item.rel], item.attrs});
        c.light_v = dbp.v;
        Subproblem child;
        for (const auto& rs : g.rels)
            if (!rs.schema.subset_of(x)) child.rels.push_back(rs);
        RelStats rx = derived_stats(proj, x, x);
        rx.at({}, x) = std::min(rx.at({}, x), dbp.log_value);
        child.rels.push_back(std::move(rx));
        child.output = g.output;
        c.children.push_back(normalize(std::move(child)));
        out.push_back(std::move(c));
    }

    // Split on articulation sets of size <= max_split.
    std::vector<AttrSet> schemas;
    for (const auto& rs : g.rels) schemas.push_back(rs.schema);
    for_each_subset(all, [&](AttrSet s) {
        if (s.size() > max_split) return;
        if (!is_articulation_set(schemas, s)) return;
        // Components of the attributes outside S.
        std::vector<AttrSet> comps;
        AttrSet rest = all - s;
        while (!rest.empty()) {
            AttrSet comp = AttrSet::single(rest.first());
            bool grew = true;
            while (grew) {
                grew = false;
                for (const auto& e : schemas) {
                    AttrSet y = e - s;
                    if (y.intersects(comp) && !y.subset_of(comp)) {
                        comp |= y;
                        grew = true;
                    }
                }
            }
            comps.push_back(comp);
            rest -= comp;
        }
        for (AttrSet k : comps) {
            std::vector<int> g1, g2;
            for (int i = 0; i < n; ++i) {
                AttrSet e = schemas[i];
                bool in1 = e.intersects(k) || e.subset_of(s);
                bool in2 = !e.intersects(k);
                if (in1) g1.push_back(i);
                if (in2) g2.push_back(i);
            }
            AttrSet a1, a2;
            for (int i : g1) a1 |= schemas[i];
            for (int i : g2) a2 |= schemas[i];
            if (!s.subset_of(a1)) continue;
            std::vector<RelStats> r1;
            for (int i : g1) r1.push_back(g.rels[i]);
            RelStats rs_stats = derived_stats(r1, a1, s);

            Subproblem g1p{r1, s};
            Subproblem g1pp{r1, g.output & a1};
            g1pp.rels.push_back(rs_stats);
            Subproblem g2p;
            for (int i : g2) g2p.rels.push_back(g.rels[i]);
            g2p.rels.push_back(rs_stats);

            if (s.subset_of(g.output)) {
                Candidate c;
                c.kind = NodeKind::Split;
                c.split_s = s;
                c.split_case = 1;
                c.g1 = g1;
                c.g2 = g2;
                Subproblem g2pp = g2p;
                g2pp.output = g.output & (a2 | s);
                c.children = {normalize(g1p), normalize(g1pp), normalize(g2pp)};
                out.push_back(std::move(c));
            }
            if (g.output.subset_of(a2)) {
                Candidate c;
                c.kind = NodeKind::Split;
                c.split_s = s;
                c.split_case = 2;
                c.g1 = g1;
                c.g2 = g2;
                Subproblem g2q = g2p;
                g2q.output = g.output;
                c.children = {normalize(g1p), normalize(g2q)};
                out.push_back(std::move(c));
            }
        }
    });
    return out;
}

// ---------------------------------------------------------------------------

struct Planner::Impl {
    PlannerOptions opt;
    struct Entry {
        bool q_done = false, p_done = false;
        double q = kInf, p = kInf;
        int qn = 0, pn = 0;
        std::shared_ptr<const std::vector<Candidate>> cands;
    };
    std::unordered_map<std::string, Entry> memo;
    std::unordered_map<std::string, DbpResult> dbp_cache;

    std::string key(const Subproblem& g) const {
        // Attributes relabelled densely; relations sorted by their serialization.
        AttrSet all = g.attrs();
        std::vector<std::string> parts;
        for (const auto& rs : g.rels) {
            std::string s;
            std::uint32_t local = local_mask(all, rs.schema);
            s.append(reinterpret_cast<const char*>(&local), sizeof local);
            for (double v : rs.ld) {
                long long r = std::llround(v * 1e9);
                s.append(reinterpret_cast<const char*>(&r), sizeof r);
            }
            parts.push_back(std::move(s));
        }
        std::sort(parts.begin(), parts.end());
        std::string k;
        std::uint32_t out = local_mask(all, g.output);
        k.append(reinterpret_cast<const char*>(&out), sizeof out);
        for (const auto& p : parts) {
            std::uint32_t len = static_cast<std::uint32_t>(p.size());
            k.append(reinterpret_cast<const char*>(&len), sizeof len);
            k += p;
        }
        return k;
    }

    Entry& entry(const Subproblem& g) {
        auto k = key(g);
        auto it = memo.find(k);
        if (it != memo.end()) return it->second;
        if (memo.size() >= opt.max_states) throw PlanRefused("planner state cap reached");
        return memo.emplace(std::move(k), Entry{}).first->second;
    }

    std::shared_ptr<const std::vector<Candidate>> cands_of(const Subproblem& g) {
        Entry& en = entry(g);
        if (!en.cands) en.cands = std::make_shared<const std::vector<Candidate>>(candidates(g, opt.mode, opt.max_split, &dbp_cache));
        return en.cands;
    }

    bool acyclic(const Subproblem& g) const {
        std::vector<AttrSet> e;
        for (const auto& r : g.rels) e.push_back(r.schema);
        return gyo_acyclic(e).has_value();
    }

    /// Base costs; returns false when the subproblem is not a base case.
    bool base(const Subproblem& g, double& q, double& p) const {
        if (g.rels.empty()) {
            q = p = 0.0;
            return true;
        }
        if (g.rels.size() == 1) {
            q = p = g.rels[0].log_size();
            return true;
        }
        if (acyclic(g)) {
            q = in_log(opt.mode, g.rels);
            p = kInf;
            return true;
        }
        return false;
    }

    Evaluated evaluate(const Candidate& c, double in, bool want_p) {
        Evaluated e;
        const CostMode m = opt.mode;
        switch (c.kind) {
            case NodeKind::Heavy:
            case NodeKind::Light: {
                double child = want_p ? P(c.children[0]) : Q(c.children[0]);
                int cn = want_p ? pnodes(c.children[0]) : qnodes(c.children[0]);
                double body = c.kind == NodeKind::Heavy ? (child == kInf ? kInf : c.term + child)
                                                        : add_cost(m, c.term, child);
                e.value = add_cost(m, in, body);
                e.nodes = 1 + cn;
                e.uses_p = want_p;
                break;
            }
            case NodeKind::Split:
                if (c.split_case == 1) {
                    if (want_p) break;
                    double v = add_cost(m, in, P(c.children[0]));
                    if (v == kInf) break;
                    v = add_cost(m, v, Q(c.children[1]));
                    v = add_cost(m, v, Q(c.children[2]));
                    e.value = v;
                    e.nodes = 1 + pnodes(c.children[0]) + qnodes(c.children[1]) + qnodes(c.children[2]);
                } else {
                    double v = add_cost(m, in, P(c.children[0]));
                    if (v == kInf) break;
                    v = add_cost(m, v, P(c.children[1]));
                    e.value = v;
                    e.nodes = 1 + pnodes(c.children[0]) + pnodes(c.children[1]);
                    e.uses_p = true;
                }
                break;
            case NodeKind::Base:
                break;
        }
        return e;
    }

    static bool better(const Evaluated& a, const Evaluated& b) {
        if (a.value < b.value - 1e-9) return true;
        if (a.value > b.value + 1e-9) return false;
        return a.nodes < b.nodes;
    }

    void check_budget(const Subproblem& g) const {
        if (static_cast<int>(g.rels.size()) > opt.max_relations)
            throw PlanRefused("planner budget exceeded: " + std::to_string(g.rels.size()) + " relations");
        if (g.attrs().size() > opt.max_attrs)
            throw PlanRefused("planner budget exceeded: " + std::to_string(g.attrs().size()) + " attributes");
    }

    double Q(const Subproblem& g) {
        {
            Entry& en = entry(g);
            if (en.q_done) return en.q;
        }
        double q, p;
        Evaluated best;
        if (base(g, q, p)) {
            best.value = q;
            best.nodes = 1;
        }
        bool stop = best.value < kInf && g.rels.size() >= 2;  // acyclic: nothing beats IN
        if (g.rels.size() <= 1) stop = true;
        if (!stop) {
            double in = in_log(opt.mode, g.rels);
            auto cands = cands_of(g);
            for (const auto& c : *cands) {
                Evaluated e = evaluate(c, in, false);
                if (better(e, best)) best = e;
            }
        }
        Entry& en = entry(g);
        en.q_done = true;
        en.q = best.value;
        en.qn = best.nodes;
        return en.q;
    }

    double P(const Subproblem& g) {
        {
            Entry& en = entry(g);
            if (en.p_done) return en.p;
        }
        double q, p;
        Evaluated best;
        bool is_base = base(g, q, p);
        if (is_base && p < kInf) {
            best.value = p;
            best.nodes = 1;
        }
        if (g.rels.size() >= 2) {
            double in = in_log(opt.mode, g.rels);
            auto cands = cands_of(g);
            for (const auto& c : *cands) {
                if (c.kind == NodeKind::Split && c.split_case == 1) continue;
                Evaluated e = evaluate(c, in, true);
                if (better(e, best)) best = e;
            }
        }
        Entry& en = entry(g);
        en.p_done = true;
        en.p = best.value;
        en.pn = best.nodes;
        return en.p;
    }

    int qnodes(const Subproblem& g) {
        Q(g);
        return entry(g).qn;
    }
    int pnodes(const Subproblem& g) {
        P(g);
        return entry(g).pn;
    }

    std::unique_ptr<PlanNode> build(const Subproblem& g, bool want_p) {
        auto node = std::make_unique<PlanNode>();
        node->output = g.output;
        for (const auto& r : g.rels) node->schemas.push_back(r.schema);
        node->in_log = in_log(opt.mode, g.rels);
        node->bound.q = Q(g);
        node->bound.p = P(g);
        const double target = want_p ? node->bound.p : node->bound.q;
        if (target == kInf) throw PlanRefused("no bound derivable for subproblem");
        node->for_p = want_p;

        double q, p;
        if (base(g, q, p)) {
            double v = want_p ? p : q;
            if (std::abs(v - target) <= 1e-9 || (v == target)) {
                node->kind = NodeKind::Base;
                node->nodes = 1;
                return node;
            }
        }
        const double in = node->in_log;
        auto cands_ptr = cands_of(g);
        const std::vector<Candidate>& cands = *cands_ptr;
        int pick = -1;
        Evaluated best;
        for (std::size_t i = 0; i < cands.size(); ++i) {
            const auto& c = cands[i];
            if (want_p && c.kind == NodeKind::Split && c.split_case == 1) continue;
            Evaluated e = evaluate(c, in, want_p);
            if (better(e, best)) {
                best = e;
                pick = static_cast<int>(i);
            }
        }
        if (pick < 0 || std::abs(best.value - target) > 1e-7)
            throw std::logic_error("planner: could not reconstruct the memoized choice");
        const Candidate& c = cands[pick];
        node->kind = c.kind;
        node->term = c.term;
        node->heavy_attr = c.heavy_attr;
        node->light_x = c.light_x;
        node->light_cover = c.light_cover;
        node->light_v = c.light_v;
        node->split_s = c.split_s;
        node->split_case = c.split_case;
        node->g1 = c.g1;
        node->g2 = c.g2;
        node->nodes = best.nodes;
        if (c.kind == NodeKind::Split) {
            node->for_p = c.split_case == 2;
            if (c.split_case == 1) {
                node->children.push_back(build(c.children[0], true));
                node->children.push_back(build(c.children[1], false));
                node->children.push_back(build(c.children[2], false));
            } else {
                node->children.push_back(build(c.children[0], true));
                node->children.push_back(build(c.children[1], true));
            }
        } else {
            node->children.push_back(build(c.children[0], want_p));
        }
        return node;
    }
};

Planner::Planner(PlannerOptions opt) : impl_(std::make_unique<Impl>()) { impl_->opt = opt; }
Planner::~Planner() = default;

CostBound Planner::cost(const Subproblem& g0) {
    Subproblem g = normalize(g0);
    impl_->check_budget(g);
    CostBound b;
    b.q = impl_->Q(g);
    b.p = impl_->P(g);
    return b;
}

std::unique_ptr<PlanNode> Planner::plan(const Subproblem& g0) {
    Subproblem g = normalize(g0);
    impl_->check_budget(g);
    return impl_->build(g, false);
}

std::size_t Planner::states() const { return impl_->memo.size(); }

double plan_exponent(const Subproblem& g, PlannerOptions opt) {
    opt.mode = CostMode::Symbolic;
    Planner planner(opt);
    return planner.cost(g).q;
}

std::string check_plan(const PlanNode& node, CostMode mode) {
    for (const auto& ch : node.children) {
        std::string s = check_plan(*ch, mode);
        if (!s.empty()) return s;
    }
    auto val = [](const PlanNode& n) { return n.for_p ? n.bound.p : n.bound.q; };
    double expect = 0;
    switch (node.kind) {
        case NodeKind::Base:
            expect = node.in_log;
            break;
        case NodeKind::Heavy:
            expect = add_cost(mode, node.in_log, node.term + val(*node.children[0]));
            break;
        case NodeKind::Light:
            expect = add_cost(mode, node.in_log, add_cost(mode, node.term, val(*node.children[0])));
            break;
        case NodeKind::Split:
            expect = add_cost(mode, node.in_log, node.children[0]->bound.p);
            if (node.split_case == 1) {
                expect = add_cost(mode, expect, val(*node.children[1]));
                expect = add_cost(mode, expect, val(*node.children[2]));
            } else {
                expect = add_cost(mode, expect, node.children[1]->bound.p);
            }
            break;
    }
    double got = val(node);
    if (std::abs(expect - got) > 1e-7 * std::max(1.0, std::abs(got))) {
        std::ostringstream os;
        os << to_string(node.kind) << " node bound " << got << " does not match recomputed " << expect;
        return os.str();
    }
    return "";
}

std::string plan_to_string(const PlanNode& root, const std::vector<std::string>* names) {
    std::ostringstream os;
    std::function<void(const PlanNode&, int)> walk = [&](const PlanNode& n, int depth) {
        os << std::string(2 * depth, ' ') << to_string(n.kind);
        switch (n.kind) {
            case NodeKind::Heavy:
                os << "(" << to_string(AttrSet::single(n.heavy_attr), names) << ")";
                break;
            case NodeKind::Light:
                os << "(" << to_string(n.light_x, names) << ")";
                break;
            case NodeKind::Split:
                os << "(" << to_string(n.split_s, names) << ", case " << (n.split_case == 1 ? "i" : "ii") << ")";
                break;
            case NodeKind::Base:
                os << (n.schemas.size() <= 1 ? "(single)" : "(acyclic)");
                break;
        }
        os << " rels=" << n.schemas.size() << " out=" << to_string(n.output, names);
        os << " Q=" << n.bound.q << " P=" << n.bound.p << (n.for_p ? " [P]" : "") << "\n";
        for (const auto& c : n.children) walk(*c, depth + 1);
    };
    walk(root, 0);
    return os.str();
}

}  // namespace degjoin
