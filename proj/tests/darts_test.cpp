#include <gtest/gtest.h>

#include "degjoin/darts.hpp"
#include "degjoin/fixtures.hpp"
#include "degjoin/generic_join.hpp"
#include "degjoin/subquadratic.hpp"
#include "oracles.hpp"
#include "symbolic.hpp"

using namespace degjoin;

namespace {

const AttrSet X = AttrSet::single(0), Y = AttrSet::single(1), Z = AttrSet::single(2);

}  // namespace

TEST(GenericJoin, MatchesNaive) {
    for (std::uint64_t seed = 1; seed <= 80; ++seed) {
        Instance inst = random_instance(seed);
        EXPECT_EQ(oracle::rows_of(generic_join(inst.query.rels, inst.query.output)), oracle::naive_join(inst.query))
            << "seed " << seed;
    }
}

TEST(Transforms, HeavyValuesAndReduce) {
    Relation r = Relation::from_rows(X | Y, {{1, 1}, {1, 2}, {2, 1}, {3, 3}});
    Relation s = Relation::from_rows(Y | Z, {{1, 5}, {2, 6}, {4, 7}});
    std::vector<Relation> rels = {r, s};
    EXPECT_EQ(heavy_values(rels, 1), (std::vector<Value>{1, 2}));
    auto reduced = heavy_reduce(rels, 1, 1);
    ASSERT_EQ(reduced.size(), 2u);
    EXPECT_EQ(oracle::rows_of(reduced[0]), (oracle::TupleSet{{1}, {2}}));
    EXPECT_EQ(oracle::rows_of(reduced[1]), (oracle::TupleSet{{5}}));
}

TEST(Transforms, LightRelationIsJoinOfProjections) {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        Instance inst = random_instance(seed);
        const auto& rels = inst.query.rels;
        if (rels.size() < 2 || inst.query.any_empty()) continue;
        AttrSet x = rels[0].schema() | rels[1].schema();
        auto st = log_stats(inst.query);
        DbpResult d = dbp_log(st, x, 1.0);
        Relation rx = light_relation(rels, x, d.cover, d.v);
        std::vector<Relation> projections;
        for (const auto& r : rels)
            if (r.schema().intersects(x)) projections.push_back(project(r, r.schema() & x));
        EXPECT_EQ(oracle::rows_of(rx), oracle::naive_join(projections, x)) << "seed " << seed;
    }
}

TEST(Transforms, ArticulationSets) {
    std::vector<AttrSet> path = {AttrSet::of({0, 1}), AttrSet::of({1, 2}), AttrSet::of({2, 3})};
    EXPECT_TRUE(is_articulation_set(path, AttrSet::of({1})));
    EXPECT_FALSE(is_articulation_set(path, AttrSet::of({0})));
    std::vector<AttrSet> c4 = {AttrSet::of({0, 1}), AttrSet::of({1, 2}), AttrSet::of({2, 3}), AttrSet::of({3, 0})};
    EXPECT_FALSE(is_articulation_set(c4, AttrSet::of({1})));
    EXPECT_TRUE(is_articulation_set(c4, AttrSet::of({1, 3})));
}

TEST(Planner, PlansAreConsistentAndCorrect) {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        Instance inst = random_instance(seed);
        PartitionedQuery pq = partition_catalog(inst.query, 2);
        for (std::size_t c : pq.live_configs()) {
            Query cq = pq.config_query(c);
            if (cq.any_empty()) continue;
            Planner planner;
            std::unique_ptr<PlanNode> plan;
            try {
                plan = planner.plan(Subproblem{pq.config_stats(c), cq.output});
            } catch (const PlanRefused&) {
                continue;
            }
            EXPECT_EQ(check_plan(*plan, CostMode::Concrete), "") << "seed " << seed;
            EXPECT_EQ(oracle::rows_of(execute_plan(*plan, cq.rels)), oracle::naive_join(cq))
                << "seed " << seed << " config " << c << "\n"
                << plan_to_string(*plan);
        }
    }
}

TEST(Planner, QBoundsOutputAndInput) {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        Instance inst = random_instance(seed);
        if (inst.query.any_empty()) continue;
        auto st = log_stats(inst.query);
        Planner planner;
        try {
            CostBound b = planner.cost(Subproblem{st, inst.query.output});
            EXPECT_GE(b.q + 1e-9, std::log(inst.query.in_size())) << "seed " << seed;
        } catch (const PlanRefused&) {
        }
    }
}

TEST(Planner, RefusesOverBudget) {
    Instance inst = chain(8, 10, 1);
    PlannerOptions opt;
    opt.max_relations = 4;
    Planner planner(opt);
    EXPECT_THROW(planner.plan(Subproblem{log_stats(inst.query), inst.query.output}), PlanRefused);
}

TEST(Planner, SymbolicExponents) {
    for (int n : {2, 3, 4}) EXPECT_NEAR(symbolic::exponent(symbolic::sizes_only(path_edges(n))), 1.0, 1e-9);
    EXPECT_NEAR(symbolic::exponent(symbolic::sizes_only(cycle_edges(4))), 2.0, 1e-9);
    for (int n : {4, 5}) {
        auto r = symbolic::cycle_regimes(n);
        double worst = std::max(symbolic::exponent(r.light), symbolic::exponent(r.heavy));
        EXPECT_NEAR(worst, 2 - r.delta, 1e-6) << "n=" << n;
    }
}

TEST(Darts, MatchesNaiveOnRandomInstances) {
    for (std::uint64_t seed = 1; seed <= 80; ++seed) {
        Instance inst = random_instance(seed);
        DartsResult r = darts_join(inst.query);
        EXPECT_EQ(oracle::rows_of(r.output), oracle::naive_join(inst.query)) << "seed " << seed;
        std::size_t total = 0;
        for (const auto& c : r.configs) total += c.output;
        EXPECT_EQ(total, r.output.size()) << "per-config outputs overlap, seed " << seed;
    }
}

TEST(Darts, ProjectedOutputs) {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        Instance inst = random_instance(seed);
        Query q = inst.query;
        q.output = AttrSet::single(q.attrs().first()) | AttrSet::single(q.rels.back().schema().first());
        EXPECT_EQ(oracle::rows_of(darts_join(q).output), oracle::naive_join(q)) << "seed " << seed;
    }
}

TEST(Subquadratic, DecisionTableMatchesRules) {
    for (bool direct : {false, true})
        for (int k = 1; k <= 4; ++k) {
            std::vector<int> lens(k, 2);
            for (;;) {
                auto v = decide_subquadratic_1sp(symbolic::sp_graph(lens, direct));
                EXPECT_EQ(to_string(v.verdict), oracle::subquadratic_verdict(lens, direct));
                int i = 0;
                while (i < k && lens[i] == 4) lens[i++] = 2;
                if (i == k) break;
                ++lens[i];
            }
        }
}

TEST(Subquadratic, ThreePathFixture) {
    auto v = decide_subquadratic_1sp(symbolic::sp_graph({3, 3, 3}, false));
    EXPECT_EQ(std::string(to_string(v.verdict)), "not subquadratic (modulo 3-SUM)");
    EXPECT_EQ(v.rule, "rule 3");
}

TEST(Subquadratic, RejectsInvalidGraphs) {
    auto g = symbolic::sp_graph({3, 3}, false);
    g.paths[1][1] = g.paths[0][1];
    EXPECT_EQ(decide_subquadratic_1sp(g).verdict, Verdict::NotSeriesParallel);
    auto h = symbolic::sp_graph({3}, false);
    h.paths[0].back() = "u";
    EXPECT_NE(check_series_parallel(h), "");
    auto round = parse_sp_graph(sp_graph_to_json(symbolic::sp_graph({2, 3, 4}, true)));
    EXPECT_EQ(round.paths.size(), 3u);
    EXPECT_TRUE(round.direct_edge);
}
