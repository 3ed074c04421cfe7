#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "degjoin/fixtures.hpp"
#include "degjoin/lp.hpp"
#include "degjoin/subset_paths.hpp"
#include "oracles.hpp"

using namespace degjoin;

TEST(Simplex, TextbookMaximum) {
    // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> 36 at (2, 6)
    LinearProgram lp(2, Sense::Max);
    lp.objective = {3, 5};
    lp.add({1, 0}, Rel::Le, 4);
    lp.add({0, 2}, Rel::Le, 12);
    lp.add({3, 2}, Rel::Le, 18);
    LpSolution s = solve_lp(lp);
    ASSERT_EQ(s.status, LpStatus::Optimal);
    EXPECT_NEAR(s.objective, 36, 1e-9);
    EXPECT_NEAR(s.x[0], 2, 1e-9);
    EXPECT_NEAR(s.x[1], 6, 1e-9);
    EXPECT_LE(max_violation(lp, s.x), 1e-9);
}

TEST(Simplex, CoveringMinimum) {
    // Triangle edge cover: min a + b + c, a + c >= 1, a + b >= 1, b + c >= 1.
    LinearProgram lp(3, Sense::Min);
    lp.objective = {1, 1, 1};
    lp.add({1, 0, 1}, Rel::Ge, 1);
    lp.add({1, 1, 0}, Rel::Ge, 1);
    lp.add({0, 1, 1}, Rel::Ge, 1);
    LpSolution s = solve_lp(lp);
    ASSERT_EQ(s.status, LpStatus::Optimal);
    EXPECT_NEAR(s.objective, 1.5, 1e-9);
    EXPECT_EQ(s.tight.size(), 3u);
}

TEST(Simplex, EqualityAndFreeVariables) {
    LinearProgram lp(2, Sense::Min);
    lp.objective = {1, 0};
    lp.free_var = {true, false};
    lp.add({1, 1}, Rel::Eq, -2);
    lp.add({0, 1}, Rel::Le, 3);
    LpSolution s = solve_lp(lp);
    ASSERT_EQ(s.status, LpStatus::Optimal);
    EXPECT_NEAR(s.objective, -5, 1e-9);
}

TEST(Simplex, InfeasibleAndUnbounded) {
    LinearProgram inf(1, Sense::Min);
    inf.objective = {1};
    inf.add({1}, Rel::Ge, 2);
    inf.add({1}, Rel::Le, 1);
    EXPECT_EQ(solve_lp(inf).status, LpStatus::Infeasible);
    LinearProgram unb(2, Sense::Max);
    unb.objective = {1, 1};
    unb.add({1, -1}, Rel::Le, 1);
    EXPECT_EQ(solve_lp(unb).status, LpStatus::Unbounded);
}

TEST(Simplex, DegenerateDoesNotCycle) {
    // A classic cycling example under the largest-coefficient rule.
    LinearProgram lp(4, Sense::Max);
    lp.objective = {0.75, -150, 0.02, -6};
    lp.add({0.25, -60, -0.04, 9}, Rel::Le, 0);
    lp.add({0.5, -90, -0.02, 3}, Rel::Le, 0);
    lp.add({0, 0, 1, 0}, Rel::Le, 1);
    LpSolution s = solve_lp(lp);
    ASSERT_EQ(s.status, LpStatus::Optimal);
    EXPECT_NEAR(s.objective, 0.05, 1e-9);
}

TEST(Simplex, RandomTwoVariableAgainstVertexEnumeration) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> coef(-1, 3), rhs(0.5, 10);
    for (int trial = 0; trial < 300; ++trial) {
        LinearProgram lp(2, Sense::Max);
        lp.objective = {coef(rng), coef(rng)};
        std::vector<oracle::Line> lines;
        // A box keeps every instance bounded.
        lines.push_back({1, 0, 20});
        lines.push_back({0, 1, 20});
        for (int k = 0; k < 4; ++k) lines.push_back({coef(rng), coef(rng), rhs(rng)});
        for (const auto& l : lines) lp.add({l.a, l.b}, Rel::Le, l.rhs);
        LpSolution s = solve_lp(lp);
        ASSERT_EQ(s.status, LpStatus::Optimal);
        EXPECT_NEAR(s.objective, oracle::max_2d(lp.objective[0], lp.objective[1], lines), 1e-7) << "trial " << trial;
        EXPECT_LE(max_violation(lp, s.x), 1e-7);
    }
}

TEST(SubsetPaths, TriangleDegreeChain) {
    // Unit-degree triangle of size N (exponent units): m_{ABC} = 1.
    auto st = uniform_graph_stats(cycle_edges(3), 1.0, 0.0);
    EXPECT_NEAR(m_value(st, AttrSet::range(3)), 1.0, 1e-12);
    // Unrestricted degrees: the chain costs two relation sizes.
    auto full = uniform_graph_stats(cycle_edges(3), 1.0, 1.0);
    for (auto& r : full) r.at({}, r.schema) = 1.0;
    EXPECT_LE(m_value(full, AttrSet::range(3)), 2.0 + 1e-12);
}

TEST(SubsetPaths, ChainReachesTarget) {
    Instance inst = chain(3, 40, 5);
    auto st = log_stats(inst.query);
    AttrSet all = inst.query.attrs();
    SubsetPaths sp(st, all, {});
    auto steps = sp.chain(all);
    ASSERT_FALSE(steps.empty());
    EXPECT_EQ(steps.front().from, AttrSet{});
    EXPECT_EQ(steps.back().to, all);
    double w = 0;
    for (const auto& s : steps) w += s.weight;
    EXPECT_NEAR(w, sp.distance(all), 1e-9);
}

TEST(SubsetPaths, BoundsEveryProjection) {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        Instance inst = random_instance(seed);
        if (inst.query.any_empty()) continue;
        auto st = log_stats(inst.query);
        AttrSet all = inst.query.attrs();
        SubsetPaths sp(st, all, {});
        Relation full = reference_join(inst.query);
        for_each_subset(all, [&](AttrSet t) {
            auto size = static_cast<double>(project(full, t).size());
            if (size > 0) EXPECT_LE(std::log(size), sp.distance(t) + 1e-9) << "seed " << seed;
        });
    }
}
