// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "degjoin/bounds.hpp"
#include "degjoin/darts.hpp"
#include "degjoin/fixtures.hpp"
#include "degjoin/generic_join.hpp"
#include "degjoin/ghd.hpp"
#include "degjoin/mrsim.hpp"
#include "degjoin/subquadratic.hpp"
#include "oracles.hpp"
#include "symbolic.hpp"

using namespace degjoin;

namespace {

constexpr int kInstances = 200;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    std::vector<std::string> problems;

    void check(bool ok, const std::string& what) {
        if (ok) return;
        pass = false;
        if (problems.size() < 5) problems.push_back(what);
    }
};

int failures = 0;

void report(int id, const std::string& title, Outcome& o) {
    std::cout << "criterion " << id << " [" << (o.pass ? "PASS" : "FAIL") << "] " << title << ": " << o.detail.str()
              << "\n";
    for (const auto& p : o.problems) std::cout << "    " << p << "\n";
    std::cout.flush();
    failures += !o.pass;
}

std::vector<AttrSet> edges_of(const Query& q) {
    std::vector<AttrSet> e;
    for (const auto& r : q.rels) e.push_back(r.schema());
    return e;
}

std::vector<Instance> corpus() {
    std::vector<Instance> out;
    for (int s = 1; s <= kInstances; ++s) out.push_back(random_instance(static_cast<std::uint64_t>(s)));
    return out;
}

// Round-1 accounting is checked on every parallel run of the suite.
std::uint64_t round1_runs = 0, round1_mismatch = 0;

void note_round1(const ParallelResult& pr) {
    for (const auto& c : pr.configs) {
        ++round1_runs;
        round1_mismatch += c.round1_measured != c.round1_predicted;
    }
}

void criterion1(const std::vector<Instance>& inst) {
    Outcome o;
    double t_darts = 0, t_ghd = 0, t_yan = 0, t_gen = 0, t_par = 0;
    int acyclic = 0, ghd_runs = 0;
    const auto start = Clock::now();
    for (std::size_t i = 0; i < inst.size(); ++i) {
        const Query& q = inst[i].query;
        const std::string tag = "seed " + std::to_string(i + 1);
        Relation ref = reference_join(q);

        auto t = Clock::now();
        o.check(darts_join(q).output == ref, tag + ": darts_join differs");
        t_darts += seconds_since(t);

        t = Clock::now();
        o.check(generic_join(q.rels, q.output) == ref, tag + ": generic_join differs");
        t_gen += seconds_since(t);

        if (q.attrs().size() <= kMaxGhdAttrs) {
            t = Clock::now();
            ++ghd_runs;
            PartitionedQuery pq = partition_catalog(q, 2);
            o.check(ghd_execute(pq, static_cast<int>(q.rels.size())) == ref, tag + ": ghd_execute differs");
            t_ghd += seconds_since(t);
        }

        if (auto jt = gyo_acyclic(edges_of(q))) {
            t = Clock::now();
            ++acyclic;
            o.check(yannakakis(q.rels, *jt, q.output) == ref, tag + ": yannakakis differs");
            t_yan += seconds_since(t);
        }

        t = Clock::now();
        ParallelResult pr = parallel_join(q, 2 + (i % 3), i + 1);
        note_round1(pr);
        o.check(pr.output == ref, tag + ": parallel_join differs");
        t_par += seconds_since(t);
    }
    const double total = seconds_since(start);
    o.check(total < 60.0, "runtime " + std::to_string(total) + " s exceeds 60 s");
    o.detail << inst.size() << " instances (" << acyclic << " acyclic, " << ghd_runs << " with GHD), " << total
             << " s [darts " << t_darts << ", generic " << t_gen << ", ghd " << t_ghd << ", yannakakis " << t_yan
             << ", parallel " << t_par << "]";
    report(1, "oracle equivalence", o);
}

void criterion2(const std::vector<Instance>& inst) {
    Outcome o;
    const double log2 = std::log(2.0);
    std::size_t configs = 0;
    double worst_dbp_agm = -INFINITY, worst_mo_gap = -INFINITY, worst_out_ratio = 0;
    for (std::size_t i = 0; i < inst.size(); ++i) {
        const Query& q = inst[i].query;
        const std::string tag = "seed " + std::to_string(i + 1);
        PartitionedQuery pq = partition_catalog(q, 2);
        const double log_in = std::log(pq.in_size());
        auto live = pq.live_configs();
        double mo_sum = 0;
        for (std::size_t c : live) {
            ++configs;
            auto st = pq.config_stats(c);
            BoundValue a = agm(st, pq.in_size());
            BoundValue d = dbp_config(st, 2.0, pq.in_size());
            BoundValue m = mo_config(st, pq.in_size());
            mo_sum += m.absolute();
            if (std::isinf(d.log_value) && d.log_value < 0) continue;
            worst_dbp_agm = std::max(worst_dbp_agm, d.absolute() / a.absolute());
            o.check(d.absolute() <= a.absolute() * (1 + 1e-6), tag + " config " + std::to_string(c) + ": DBP > AGM");
            const double slack = static_cast<double>(d.cover.size()) * log2 / log_in;
            const double gap = m.log_value / log_in - (d.log_value / log_in + slack);
            worst_mo_gap = std::max(worst_mo_gap, gap);
            o.check(gap <= 1e-6, tag + " config " + std::to_string(c) + ": MO exponent above DBP + |C| log 2");
        }
        const double out = static_cast<double>(reference_join(q).size());
        const double cap = mo_sum * static_cast<double>(live.size());
        if (out > 0) worst_out_ratio = std::max(worst_out_ratio, out / cap);
        o.check(out <= cap * (1 + 1e-9), tag + ": output exceeds mo_total x configs");
    }
    o.detail << configs << " realized configurations; max DBP/AGM " << worst_dbp_agm
             << ", max MO-(DBP+|C|log2) exponent gap " << worst_mo_gap << ", max |out|/(mo_total x #configs) "
             << worst_out_ratio;
    report(2, "bound ordering", o);
}

void criterion3() {
    Outcome o;
    auto tri = symbolic::sizes_only(cycle_edges(3));
    const double agm_tri = agm_log(tri, AttrSet::range(3));
    o.check(std::abs(agm_tri - 1.5) <= 1e-9, "symbolic triangle AGM " + std::to_string(agm_tri));
    Instance dtri = matching_cycle(3, 1000);
    const double agm_data = agm_log(log_stats(dtri.query), dtri.query.attrs()) / std::log(1000.0);
    o.check(std::abs(agm_data - 1.5) <= 1e-9, "data triangle AGM exponent " + std::to_string(agm_data));

    const double c4 = fhw_log(symbolic::sizes_only(cycle_edges(4)), 8);
    o.check(std::abs(c4 - 2.0) <= 1e-9, "fhw(4-cycle) " + std::to_string(c4));

    double worst_acyclic = 0;
    std::vector<std::vector<RelStats>> acyclic;
    for (int n : {1, 2, 3, 5}) acyclic.push_back(symbolic::sizes_only(path_edges(n)));
    acyclic.push_back(symbolic::sizes_only({{0, 1}, {0, 2}, {0, 3}, {0, 4}}));
    {
        // Hyperedge fixture: R(A,B,C), S(C,D), T(A,B,E).
        std::vector<RelStats> h;
        for (AttrSet s : {AttrSet::of({0, 1, 2}), AttrSet::of({2, 3}), AttrSet::of({0, 1, 4})}) {
            RelStats r(s);
            for (auto& v : r.ld) v = 1.0;
            h.push_back(r);
        }
        acyclic.push_back(h);
    }
    for (const auto& st : acyclic) {
        const double f = fhw_log(st, 8);
        worst_acyclic = std::max(worst_acyclic, std::abs(f - 1.0));
        o.check(std::abs(f - 1.0) <= 1e-9, "acyclic fhw " + std::to_string(f));
    }
    Instance ch = chain(4, 500, 2);
    double data_ch = 0;
    {
        auto st = log_stats(ch.query);
        double mx = 0;
        for (const auto& r : st) mx = std::max(mx, r.log_size());
        data_ch = fhw_log(st, 8) / mx;
        o.check(std::abs(data_ch - 1.0) <= 1e-9, "data chain fhw " + std::to_string(data_ch));
    }
    o.detail << "AGM(triangle) " << agm_tri << " (data " << agm_data << "), fhw(C4) " << c4
             << ", max |fhw-1| over " << acyclic.size() + 1 << " acyclic fixtures " << std::max(worst_acyclic, std::abs(data_ch - 1));
    report(3, "analytic exponents", o);
}

void criterion4() {
    Outcome o;
    const auto start = Clock::now();
    const double N = 1e4;
    for (std::size_t d : {2u, 16u, 100u}) {
        Instance inst = regular_triangle(static_cast<std::size_t>(N), d);
        PartitionedQuery pq = partition_catalog(inst.query, 2);
        const double mo = mo_total(pq).absolute();
        const double agm_abs = agm(log_stats(inst.query), pq.in_size()).absolute();
        const double cap = 64 * std::min(N * d, N * N / d);
        o.check(mo <= cap, "d=" + std::to_string(d) + ": mo_total above 64 min(Nd, N^2/d)");
        if (d != 100) o.check(mo < agm_abs, "d=" + std::to_string(d) + ": mo_total not below AGM");
        const double out = static_cast<double>(generic_join(inst.query.rels, inst.query.output).size());
        o.check(out <= mo * (1 + 1e-9), "d=" + std::to_string(d) + ": output above mo_total");
        o.detail << "d=" << d << " mo_total " << mo << " (cap " << cap << ", AGM " << agm_abs << ", |out| " << out
                 << "); ";
    }
    const double t = seconds_since(start);
    o.check(t < 30.0, "runtime " + std::to_string(t) + " s");
    o.detail << t << " s";
    report(4, "degree-based triangle bound", o);
}

void criterion5() {
    Outcome o;
    const auto start = Clock::now();
    for (int n : {2, 3, 4}) {
        const double e = symbolic::exponent(symbolic::sizes_only(path_edges(n)));
        o.check(std::abs(e - 1.0) <= 1e-6, "chain " + std::to_string(n) + " exponent " + std::to_string(e));
        o.detail << "chain(" << n << ") " << e << "; ";
    }
    for (int n : {4, 5, 6}) {
        auto r = symbolic::cycle_regimes(n);
        const double light = symbolic::exponent(r.light), heavy = symbolic::exponent(r.heavy);
        const double worst = std::max(light, heavy);
        o.check(std::abs(worst - (2 - r.delta)) <= 1e-6,
                "cycle " + std::to_string(n) + " exponent " + std::to_string(worst));
        o.detail << "C" << n << " max(light " << light << ", heavy " << heavy << ") vs " << 2 - r.delta << "; ";
    }
    double k23 = 0;
    const int steps = 6;
    for (int i = 0; i <= steps; ++i)
        for (int j = 0; j <= steps; ++j)
            k23 = std::max(k23, symbolic::exponent(symbolic::k2n_uniform(3, double(i) / steps, double(j) / steps)));
    o.check(k23 < 2 - 1e-6, "K_{2,3} worst exponent " + std::to_string(k23));
    o.detail << "K23 worst over uniform degree grid " << k23 << "; " << seconds_since(start) << " s";
    report(5, "planner exponent recovery", o);
}

void criterion6() {
    Outcome o;
    int cases = 0, sub = 0;
    for (bool direct : {false, true})
        for (int k = 1; k <= 4; ++k) {
            std::vector<int> lens(k, 2);
            for (;;) {
                auto v = decide_subquadratic_1sp(symbolic::sp_graph(lens, direct));
                const std::string expect = oracle::subquadratic_verdict(lens, direct);
                ++cases;
                sub += expect == "subquadratic";
                std::ostringstream id;
                id << (direct ? "direct " : "") << "paths";
                for (int l : lens) id << " " << l;
                o.check(to_string(v.verdict) == expect, id.str() + ": got " + to_string(v.verdict));
                int i = 0;
                while (i < k && lens[i] == 4) lens[i++] = 2;
                if (i == k) break;
                ++lens[i];
            }
        }
    o.detail << cases << " graphs (" << sub << " subquadratic, " << cases - sub << " not)";
    report(6, "subquadratic decision table", o);
}

void criterion7(const std::vector<Instance>& inst) {
    Outcome o;
    const std::size_t N = 2048;
    for (int n : {4, 5, 6}) {
        WidthReport unit = m_width(partition_catalog(matching_cycle(n, N).query, 2), 8);
        o.check(unit.m_width <= 1 + 0.05, "unit cycle " + std::to_string(n) + " m-width " + std::to_string(unit.m_width));
        const double cap = 2 - 1.0 / (1 + (n + 1) / 2);
        WidthReport skew = m_width(partition_catalog(skewed_cycle(n, N).query, 2), 8);
        o.check(skew.m_width <= cap + 0.05, "skewed cycle " + std::to_string(n) + " m-width " + std::to_string(skew.m_width));
        o.detail << "C" << n << " unit " << unit.m_width << ", skewed " << skew.m_width << " (cap " << cap + 0.05
                 << ", fhw " << skew.fhw << "); ";
    }
    int checked = 0;
    double worst = -INFINITY;
    for (std::size_t i = 0; i < inst.size(); ++i) {
        const Query& q = inst[i].query;
        if (q.attrs().size() > kMaxGhdAttrs || q.any_empty()) continue;
        WidthReport w = m_width(partition_catalog(q, 2), 8);
        ++checked;
        worst = std::max(worst, w.m_width - w.fhw);
        o.check(w.m_width <= w.fhw + 1e-6, "seed " + std::to_string(i + 1) + ": m-width above fhw");
    }
    o.detail << checked << " random instances, max m-width - fhw " << worst;
    report(7, "m-width", o);
}

void criterion8() {
    Outcome o;
    const std::uint64_t L = 16;
    Instance inst = regular_triangle(10000, 2);
    std::uint64_t max_load = 0, min_max = UINT64_MAX;
    double worst_ratio = 0;
    int load_fail = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        ParallelResult pr = parallel_join(inst.query, L, seed, true);
        note_round1(pr);
        PartitionedQuery pq = partition_catalog(inst.query, L);
        CommunicationBudget b = communication_budget(pq, L, static_cast<double>(pr.output.size()));
        const double ratio = pr.metrics.total_communication / b.total;
        worst_ratio = std::max(worst_ratio, ratio);
        max_load = std::max(max_load, pr.metrics.max_load);
        min_max = std::min(min_max, pr.metrics.max_load);
        if (pr.metrics.max_load > 4 * L) ++load_fail;
        o.check(pr.metrics.max_load <= 4 * L,
                "seed " + std::to_string(seed) + ": max load " + std::to_string(pr.metrics.max_load) + " > " +
                    std::to_string(4 * L));
        o.check(ratio <= 8, "seed " + std::to_string(seed) + ": communication ratio " + std::to_string(ratio));
    }
    o.check(round1_mismatch == 0, std::to_string(round1_mismatch) + " round-1 accounting mismatches");
    o.detail << "round-1 closed form matched on " << round1_runs - round1_mismatch << "/" << round1_runs
             << " configuration runs; sparse triangle L=16: max load " << min_max << ".." << max_load << " (limit "
             << 4 * L << ", " << load_fail << "/20 seeds over), communication/budget max " << worst_ratio;
    report(8, "simulator accounting", o);
}

void criterion9() {
    Outcome o;
    double worst = 0;
    int runs = 0;
    for (std::size_t n : {100u, 1000u, 10000u}) {
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            Instance inst = chain(1, n, seed * 31 + n);
            const Relation& r = inst.query.rels[0];
            for (AttrSet a : {AttrSet::of({0}), AttrSet::of({1}), r.schema()}) {
                DegreeRun run = mr_degree(r, a, 10, seed);
                ++runs;
                o.check(run.counts == degree_table(r, a), "counts differ for n=" + std::to_string(n));
                const double m = static_cast<double>(r.size());
                const int expect = m <= 10 ? 1 : static_cast<int>(std::ceil(std::log10(m / 10) - 1e-12)) + 1;
                o.check(run.metrics.rounds == expect, "rounds " + std::to_string(run.metrics.rounds) + " for |R|=" +
                                                          std::to_string(r.size()));
                const double ratio = run.metrics.total_communication / m;
                worst = std::max(worst, ratio);
                o.check(ratio <= 4, "communication " + std::to_string(ratio) + " |R|");
            }
        }
    }
    o.detail << runs << " runs at L=10, |R| up to 10^4; max communication/|R| " << worst;
    report(9, "mr_degree", o);
}

void criterion10(const std::vector<Instance>& inst) {
    Outcome o;
    std::size_t configs = 0, dead_checked = 0;
    for (std::size_t i = 0; i < inst.size(); ++i) {
        const Query& q = inst[i].query;
        const std::string tag = "seed " + std::to_string(i + 1);
        PartitionedQuery pq = partition_catalog(q, 2);
        auto issues = validate_partition(pq);
        o.check(issues.empty(), tag + ": " + (issues.empty() ? "" : issues[0]));
        for (std::size_t r = 0; r < q.rels.size(); ++r) {
            std::size_t sum = 0;
            Relation all(q.rels[r].schema());
            for (const auto& f : pq.parts[r]) {
                sum += f.rel.size();
                o.check(set_intersection(all, f.rel).empty(), tag + ": fragments overlap");
                all = set_union(all, f.rel);
            }
            o.check(sum == q.rels[r].size(), tag + ": fragment sizes do not add up");
            o.check(all == q.rels[r], tag + ": fragments do not reassemble the relation");
        }
        Relation ref = reference_join(q);
        Relation acc(q.output);
        std::size_t total = 0;
        auto live = pq.live_configs();
        configs += live.size();
        for (std::size_t c : live) {
            Relation part = reference_join(pq.config_query(c));
            total += part.size();
            acc = set_union(acc, part);
        }
        o.check(total == acc.size(), tag + ": per-configuration joins overlap");
        o.check(acc == ref, tag + ": union of configuration joins differs from the join");
        if (pq.config_count() <= 300) {
            std::vector<bool> alive(pq.config_count(), false);
            for (std::size_t c : live) alive[c] = true;
            for (std::size_t c = 0; c < pq.config_count(); ++c) {
                if (alive[c]) continue;
                ++dead_checked;
                o.check(reference_join(pq.config_query(c)).empty(), tag + ": skipped configuration has output");
            }
        }
    }
    o.detail << inst.size() << " instances, " << configs << " realized configurations, " << dead_checked
             << " pruned configurations confirmed empty";
    report(10, "partition soundness", o);
}

}  // namespace

int main() {
    const auto start = Clock::now();
    auto inst = corpus();
    criterion1(inst);
    criterion2(inst);
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7(inst);
    criterion8();
    criterion9();
    criterion10(inst);
    std::cout << (10 - failures) << "/10 criteria passed in " << seconds_since(start) << " s\n";
    return failures == 0 ? 0 : 1;
}
