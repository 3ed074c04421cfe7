#include <cmath>

#include <gtest/gtest.h>

#include "degjoin/degree.hpp"
#include "degjoin/fixtures.hpp"
#include "oracles.hpp"

using namespace degjoin;

namespace {

const AttrSet X = AttrSet::single(0), Y = AttrSet::single(1);

}  // namespace

TEST(Degree, SmallExample) {
    Relation r = Relation::from_rows(X | Y, {{1, 1}, {1, 2}, {1, 3}, {2, 1}});
    DegreeStats d = compute_degrees(r);
    EXPECT_EQ(d.max_degree(X), 3u);
    EXPECT_EQ(d.max_degree(Y), 2u);
    EXPECT_EQ(d.max_degree({}), 4u);
    EXPECT_EQ(d.max_degree(X | Y), 1u);
}

TEST(Degree, MatchesNaiveCounts) {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        Instance inst = random_instance(seed);
        for (const auto& r : inst.query.rels) {
            if (r.empty()) continue;
            DegreeStats d = compute_degrees(r);
            for_each_subset(r.schema(), [&](AttrSet a) {
                auto naive = oracle::naive_degrees(r, a);
                EXPECT_EQ(degree_table(r, a), naive);
                std::uint64_t mx = 0;
                for (const auto& [k, v] : naive) mx = std::max(mx, v);
                EXPECT_EQ(d.max_degree(a), mx) << "seed " << seed;
            });
        }
    }
}

TEST(Degree, LogStats) {
    Relation r = Relation::from_rows(X | Y, {{1, 1}, {1, 2}, {2, 1}});
    RelStats s = log_stats(r);
    EXPECT_NEAR(s.log_size(), std::log(3.0), 1e-12);
    EXPECT_NEAR(s.log_proj(X), std::log(2.0), 1e-12);
    EXPECT_NEAR(s.log_deg(X), std::log(2.0), 1e-12);
}

TEST(Degree, BucketOf) {
    EXPECT_EQ(bucket_of(1, 2), 0);
    EXPECT_EQ(bucket_of(2, 2), 1);
    EXPECT_EQ(bucket_of(3, 2), 1);
    EXPECT_EQ(bucket_of(4, 2), 2);
    EXPECT_EQ(bucket_of(99, 10), 1);
    EXPECT_EQ(bucket_of(100, 10), 2);
    EXPECT_THROW(bucket_of(0, 2), std::invalid_argument);
    EXPECT_THROW(bucket_of(5, 1), std::invalid_argument);
    for (std::uint64_t d = 1; d < 5000; d += 7) {
        int l = bucket_of(d, 3);
        EXPECT_LE(std::pow(3.0, l), static_cast<double>(d));
        EXPECT_LT(static_cast<double>(d), std::pow(3.0, l + 1));
    }
}

TEST(Partition, SoundOnRandomInstances) {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        Instance inst = random_instance(seed);
        PartitionedQuery pq = partition_catalog(inst.query, 2);
        EXPECT_TRUE(validate_partition(pq).empty()) << "seed " << seed;
        for (std::size_t r = 0; r < inst.query.rels.size(); ++r) {
            oracle::TupleSet seen;
            std::size_t total = 0;
            for (const auto& f : pq.parts[r]) {
                total += f.rel.size();
                for (const auto& t : oracle::rows_of(f.rel)) EXPECT_TRUE(seen.insert(t).second);
            }
            EXPECT_EQ(total, inst.query.rels[r].size());
            EXPECT_EQ(seen, oracle::rows_of(inst.query.rels[r]));
        }
    }
}

TEST(Partition, LiveConfigsCoverTheJoin) {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        Instance inst = random_instance(seed);
        PartitionedQuery pq = partition_catalog(inst.query, 2);
        oracle::TupleSet all;
        for (std::size_t c : pq.live_configs()) {
            for (const auto& t : oracle::naive_join(pq.config_query(c))) EXPECT_TRUE(all.insert(t).second);
        }
        EXPECT_EQ(all, oracle::naive_join(inst.query)) << "seed " << seed;
    }
}

TEST(Partition, DeadConfigsAreEmpty) {
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        Instance inst = random_instance(seed, {.max_relations = 3});
        PartitionedQuery pq = partition_catalog(inst.query, 2);
        if (pq.config_count() > 400) continue;
        auto live = pq.live_configs();
        std::set<std::size_t> alive(live.begin(), live.end());
        for (std::size_t c = 0; c < pq.config_count(); ++c)
            if (!alive.count(c)) EXPECT_TRUE(oracle::naive_join(pq.config_query(c)).empty()) << "seed " << seed;
    }
}

TEST(Partition, UniformRelationHasOneFragment) {
    Instance inst = matching_cycle(4, 64);
    PartitionedQuery pq = partition_catalog(inst.query, 2);
    for (const auto& parts : pq.parts) EXPECT_EQ(parts.size(), 1u);
    EXPECT_EQ(pq.config_count(), 1u);
}
