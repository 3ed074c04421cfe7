#include "degjoin/bounds.hpp"

#include <algorithm>
#include <numeric>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

#include "degjoin/subset_paths.hpp"

namespace degjoin {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

AttrSet union_of(const std::vector<RelStats>& rels) {
    AttrSet s;
    for (const auto& r : rels) s |= r.schema;
    return s;
}

bool any_empty(const std::vector<RelStats>& rels) {
    return std::any_of(rels.begin(), rels.end(), [](const RelStats& r) { return r.empty; });
}

double log_base(double in_size) { return in_size > 1 ? std::log(in_size) : 1.0; }

}  // namespace

const char* to_string(BoundKind k) {
    switch (k) {
        case BoundKind::AGM: return "AGM";
        case BoundKind::DBP: return "DBP";
        case BoundKind::MO: return "MO";
        case BoundKind::ACTUAL: return "ACTUAL";
    }
    return "?";
}

double agm_log(const std::vector<RelStats>& rels, AttrSet universe, std::vector<double>* weights) {
    if (any_empty(rels)) return -kInf;
    if (universe.empty()) return 0.0;
    const int n = static_cast<int>(rels.size());
    LinearProgram lp(n, Sense::Min);
    for (int r = 0; r < n; ++r) {
        lp.names[r] = "w" + std::to_string(r);
        lp.objective[r] = rels[r].log_proj(rels[r].schema & universe);
    }
    for (AttrId a : universe) {
        std::vector<double> row(n, 0.0);
        for (int r = 0; r < n; ++r)
            if (rels[r].schema.contains(a)) row[r] = 1.0;
        lp.add(std::move(row), Rel::Ge, 1.0);
    }
    LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal) return kInf;
    if (weights) *weights = sol.x;
    return sol.objective;
}

std::vector<Cover> enumerate_covers(const std::vector<AttrSet>& schemas, AttrSet universe) {
    std::vector<CoverItem> items;
    for (std::size_t r = 0; r < schemas.size(); ++r) {
        for_each_subset(schemas[r] & universe, [&](AttrSet a) {
            if (!a.empty()) items.push_back({static_cast<int>(r), a});
        });
    }
    std::set<Cover> found;
    Cover chosen;
    // Every chosen item must keep an attribute no other chosen item covers.
    auto irredundant = [&]() {
        for (std::size_t i = 0; i < chosen.size(); ++i) {
            AttrSet others;
            for (std::size_t j = 0; j < chosen.size(); ++j)
                if (j != i) others |= chosen[j].attrs;
            if (chosen[i].attrs.subset_of(others)) return false;
        }
        return true;
    };
    std::function<void(AttrSet)> grow = [&](AttrSet covered) {
        if (covered == universe) {
            Cover c = chosen;
            std::sort(c.begin(), c.end());
            found.insert(std::move(c));
            return;
        }
        AttrId a = (universe - covered).first();
        for (const auto& it : items) {
            if (!it.attrs.contains(a)) continue;
            chosen.push_back(it);
            if (irredundant()) grow(covered | it.attrs);
            chosen.pop_back();
        }
    };
    if (!universe.empty()) grow({});
    return {found.begin(), found.end()};
}

LinearProgram dbp_program(const std::vector<RelStats>& rels, const Cover& cover, AttrSet universe, double L) {
    const int n = universe.size();
    LinearProgram lp(n, Sense::Min);
    for (int k = 0; k < n; ++k) lp.objective[k] = 1.0;
    const double logL = std::log(L);
    for (const auto& item : cover) {
        const RelStats& rs = rels[item.rel];
        for_each_subset(item.attrs, [&](AttrSet sub) {
            if (sub.empty()) return;
            std::vector<double> row(n, 0.0);
            for (AttrId a : sub) row[universe.rank(a)] = 1.0;
            double rhs = std::max(0.0, rs.at(item.attrs - sub, item.attrs) - logL);
            // Rows with a zero right-hand side are implied by v >= 0.
            if (rhs > 0) lp.add(std::move(row), Rel::Ge, rhs);
        });
    }
    return lp;
}

DbpResult dbp_log(const std::vector<RelStats>& rels, AttrSet universe, double L) {
    DbpResult best;
    best.v.assign(kMaxAttrs, 0.0);
    if (any_empty(rels)) {
        best.log_value = -kInf;
        return best;
    }
    if (universe.empty()) return best;
    std::vector<AttrSet> schemas;
    for (const auto& r : rels) schemas.push_back(r.schema);
    best.log_value = kInf;
    // Each cover is scored through the packing dual (origin feasible); the
    // primal is solved once for the winning cover to obtain v.
    const int n = universe.size();
    for (const Cover& c : enumerate_covers(schemas, universe)) {
        LinearProgram primal = dbp_program(rels, c, universe, L);
        const int m = static_cast<int>(primal.rows.size());
        // Disjoint rows give a feasible dual point, hence a lower bound.
        std::vector<int> order(m);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](int x, int y) { return primal.rows[x].rhs > primal.rows[y].rhs; });
        double lower = 0;
        std::vector<bool> used(n, false);
        for (int i : order) {
            bool free = true;
            for (int a = 0; a < n && free; ++a) free = !(primal.rows[i].coef[a] > 0 && used[a]);
            if (!free) continue;
            for (int a = 0; a < n; ++a) used[a] = used[a] || primal.rows[i].coef[a] > 0;
            lower += primal.rows[i].rhs;
        }
        // Ties go to the cover with fewer items.
        if (lower > best.log_value + 1e-12 ||
            (lower >= best.log_value - 1e-12 && c.size() >= best.cover.size()))
            continue;
        double value = 0;
        if (m > 0) {
            LinearProgram dual(m, Sense::Max);
            for (int i = 0; i < m; ++i) dual.objective[i] = primal.rows[i].rhs;
            for (int a = 0; a < n; ++a) {
                std::vector<double> row(m, 0.0);
                for (int i = 0; i < m; ++i) row[i] = primal.rows[i].coef[a];
                dual.add(std::move(row), Rel::Le, 1.0);
            }
            LpSolution sol = solve_lp(dual);
            if (sol.status != LpStatus::Optimal) continue;
            value = sol.objective;
        }
        if (value < best.log_value - 1e-12 ||
            (value <= best.log_value + 1e-12 && c.size() < best.cover.size())) {
            best.log_value = value;
            best.cover = c;
        }
    }
    if (best.log_value < kInf) {
        LpSolution sol = solve_lp(dbp_program(rels, best.cover, universe, L));
        if (sol.status == LpStatus::Optimal) {
            best.log_value = sol.objective;
            int k = 0;
            for (AttrId a : universe) best.v[a] = sol.x[k++];
        }
    }
    return best;
}

BoundValue agm(const std::vector<RelStats>& rels, double in_size) {
    BoundValue b;
    b.kind = BoundKind::AGM;
    b.log_in = log_base(in_size);
    b.log_value = agm_log(rels, union_of(rels), &b.witness);
    return b;
}

BoundValue dbp_config(const std::vector<RelStats>& rels, double L, double in_size) {
    BoundValue b;
    b.kind = BoundKind::DBP;
    b.log_in = log_base(in_size);
    DbpResult r = dbp_log(rels, union_of(rels), L);
    b.log_value = r.log_value;
    b.cover = r.cover;
    b.witness = r.v;
    return b;
}

BoundValue mo_config(const std::vector<RelStats>& rels, double in_size) {
    BoundValue b;
    b.kind = BoundKind::MO;
    b.log_in = log_base(in_size);
    if (any_empty(rels)) {
        b.log_value = -kInf;
        return b;
    }
    AttrSet all = union_of(rels);
    SubsetPaths sp(rels, all, {});
    b.log_value = sp.distance(all);
    for_each_subset(all, [&](AttrSet s) { b.witness.push_back(sp.distance(s)); });
    return b;
}

BoundValue mo_total(const PartitionedQuery& pq) {
    BoundValue total;
    total.kind = BoundKind::MO;
    total.log_in = log_base(pq.in_size());
    double sum = 0;
    for (std::size_t c : pq.live_configs())
        sum += mo_config(pq.config_stats(c), pq.in_size()).absolute();
    total.log_value = std::log(sum);
    return total;
}

BoundReport bound_report(const PartitionedQuery& pq, const double* actual) {
    BoundReport rep;
    rep.in_size = pq.in_size();
    {
        auto whole = log_stats(pq.query);
        rep.agm_query = agm(whole, rep.in_size).absolute();
    }
    const double log2 = std::log(2.0);
    for (std::size_t c : pq.live_configs()) {
        auto stats = pq.config_stats(c);
        BoundRow row;
        row.config = c;
        row.agm = agm(stats, rep.in_size);
        row.dbp = dbp_config(stats, 2.0, rep.in_size);
        row.mo = mo_config(stats, rep.in_size);
        rep.agm_total += row.agm.absolute();
        rep.dbp_total += row.dbp.absolute();
        rep.mo_total += row.mo.absolute();
        if (row.dbp.log_value > row.agm.log_value + std::log1p(1e-6)) {
            std::ostringstream os;
            os << "config " << c << ": DBP " << row.dbp.absolute() << " exceeds AGM " << row.agm.absolute();
            rep.violations.push_back(os.str());
        }
        double slack = static_cast<double>(row.dbp.cover.size()) * log2;
        if (row.mo.log_value > row.dbp.log_value + slack + 1e-6 * row.mo.log_in) {
            std::ostringstream os;
            os << "config " << c << ": MO exponent " << row.mo.exponent() << " exceeds DBP exponent "
               << row.dbp.exponent() << " + |C| log 2";
            rep.violations.push_back(os.str());
        }
        rep.rows.push_back(std::move(row));
    }
    if (actual) {
        rep.has_actual = true;
        rep.actual = *actual;
    }
    return rep;
}

}  // namespace degjoin
