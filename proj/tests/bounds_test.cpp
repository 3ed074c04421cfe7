#include <cmath>

#include <gtest/gtest.h>

#include "degjoin/bounds.hpp"
#include "degjoin/fixtures.hpp"
#include "oracles.hpp"

using namespace degjoin;

namespace {

AttrSet union_of(const std::vector<RelStats>& st) {
    AttrSet a;
    for (const auto& r : st) a |= r.schema;
    return a;
}

RelStats sized(AttrId x, AttrId y, double s) { return binary_stats(x, y, s, s, s, s, s); }

}  // namespace

TEST(Agm, EqualTriangleIsThreeHalves) {
    auto st = uniform_graph_stats(cycle_edges(3), 1.0, 0.0);
    std::vector<double> w;
    EXPECT_NEAR(agm_log(st, AttrSet::range(3), &w), 1.5, 1e-9);
    for (double x : w) EXPECT_NEAR(x, 0.5, 1e-9);
}

TEST(Agm, TriangleMatchesVertexFormula) {
    // Edge-cover polytope of a triangle has vertices (1,1,0) (1,0,1) (0,1,1)
    // and (1/2,1/2,1/2).
    for (double a : {0.5, 1.0, 2.0})
        for (double b : {0.3, 1.0, 1.7})
            for (double c : {0.1, 1.0, 2.5}) {
                std::vector<RelStats> st = {sized(0, 1, a), sized(1, 2, b), sized(0, 2, c)};
                double expect = std::min({a + b, a + c, b + c, (a + b + c) / 2});
                EXPECT_NEAR(agm_log(st, AttrSet::range(3)), expect, 1e-9);
            }
}

TEST(Agm, UncoverableIsInfinite) {
    std::vector<RelStats> st = {sized(0, 1, 1.0)};
    EXPECT_TRUE(std::isinf(agm_log(st, AttrSet::range(3))));
}

TEST(Covers, AreIrredundantCovers) {
    std::vector<AttrSet> schemas = {AttrSet::of({0, 1}), AttrSet::of({1, 2}), AttrSet::of({0, 2, 3})};
    AttrSet all = AttrSet::range(4);
    auto covers = enumerate_covers(schemas, all);
    ASSERT_FALSE(covers.empty());
    std::set<Cover> unique(covers.begin(), covers.end());
    EXPECT_EQ(unique.size(), covers.size());
    for (const auto& c : covers) {
        AttrSet u;
        for (const auto& item : c) {
            EXPECT_TRUE(item.attrs.subset_of(schemas[item.rel]));
            u |= item.attrs;
        }
        EXPECT_EQ(u, all);
        for (std::size_t i = 0; i < c.size(); ++i) {
            AttrSet others;
            for (std::size_t j = 0; j < c.size(); ++j)
                if (j != i) others |= c[j].attrs;
            EXPECT_FALSE(c[i].attrs.subset_of(others));
        }
    }
}

TEST(Dbp, HandComputedPath) {
    // Path X - Y - Z where Y has degree N^t on both sides and nothing else is
    // known. The best cover is {(R,XY),(S,YZ)}: v_X, v_Z >= t, v_Y >= 1.
    const double t = 0.25;
    std::vector<RelStats> st = {binary_stats(0, 2, 1, 1, 1, 1, t), binary_stats(2, 1, 1, 1, 1, t, 1)};
    DbpResult r = dbp_log(st, AttrSet::range(3), 1.0);
    EXPECT_NEAR(r.log_value, 1 + 2 * t, 1e-9);
    double sum = 0;
    for (AttrId a : AttrSet::range(3)) sum += r.v[a];
    EXPECT_NEAR(sum, r.log_value, 1e-9);
}

TEST(Dbp, ProgramWitnessIsFeasible) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Instance inst = random_instance(seed);
        if (inst.query.any_empty()) continue;
        auto st = log_stats(inst.query);
        AttrSet all = union_of(st);
        DbpResult r = dbp_log(st, all, 2.0);
        LinearProgram lp = dbp_program(st, r.cover, all, 2.0);
        std::vector<double> x;
        for (AttrId a : all) x.push_back(r.v[a]);
        EXPECT_LE(max_violation(lp, x), 1e-7) << "seed " << seed;
        LpSolution s = solve_lp(lp);
        EXPECT_NEAR(s.objective, r.log_value, 1e-7);
    }
}

TEST(Bounds, OrderingAndOutputOnRandomConfigs) {
    const double log2 = std::log(2.0);
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        Instance inst = random_instance(seed);
        PartitionedQuery pq = partition_catalog(inst.query, 2);
        double mo_sum = 0;
        for (std::size_t c : pq.live_configs()) {
            auto st = pq.config_stats(c);
            BoundValue a = agm(st, pq.in_size());
            BoundValue d = dbp_config(st, 2.0, pq.in_size());
            BoundValue m = mo_config(st, pq.in_size());
            EXPECT_LE(d.log_value, a.log_value + 1e-6) << "seed " << seed << " config " << c;
            EXPECT_LE(m.log_value, d.log_value + d.cover.size() * log2 + 1e-6) << "seed " << seed;
            const auto out = static_cast<double>(oracle::naive_join(pq.config_query(c)).size());
            if (out > 0) EXPECT_LE(std::log(out), m.log_value + 1e-9) << "seed " << seed;
            mo_sum += m.absolute();
        }
        const auto out = static_cast<double>(reference_join(inst.query).size());
        EXPECT_LE(out, mo_sum * (1 + 1e-9) + 1e-9);
        EXPECT_NEAR(mo_total(pq).absolute(), mo_sum, 1e-6 * std::max(1.0, mo_sum));
    }
}

TEST(Bounds, ReportOnTriangle) {
    Instance inst = regular_triangle(600, 3);
    PartitionedQuery pq = partition_catalog(inst.query, 2);
    BoundReport rep = bound_report(pq);
    EXPECT_TRUE(rep.violations.empty());
    EXPECT_EQ(rep.rows.size(), pq.live_configs().size());
    // Every relation is 3-regular on 200 + 200 vertices: MO = N * d.
    EXPECT_NEAR(rep.mo_total, 600.0 * 3, 1e-6);
    EXPECT_NEAR(rep.agm_query, std::pow(600.0, 1.5), 1e-6);
}

TEST(Bounds, EmptyRelationGivesZero) {
    Relation r = Relation::from_rows(AttrSet::of({0, 1}), {{1, 2}});
    Relation s(AttrSet::of({1, 2}));
    Query q = make_query({r, s});
    PartitionedQuery pq = partition_catalog(q, 2);
    BoundReport rep = bound_report(pq);
    EXPECT_EQ(rep.mo_total, 0.0);
}
