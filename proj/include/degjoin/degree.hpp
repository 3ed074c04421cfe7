#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "degjoin/query.hpp"
#include "degjoin/relation.hpp"

namespace degjoin {

/// Exact degree statistics of one relation over every subset of its schema.
/// Subsets are addressed by local masks (see local_mask()).
struct DegreeStats {
    AttrSet schema;
    int arity = 0;
    std::size_t size = 0;
    /// d_{R,A} per local mask; d_{R,empty} = |R|.
    std::vector<std::uint64_t> max_deg;
    /// deg(pi_A(t), R, A) for every row t, per local mask.
    std::vector<std::vector<std::uint32_t>> row_deg;
    /// d_{pi_B R, A} at [mA << arity | mB] for A subset of B; zero elsewhere.
    std::vector<std::uint64_t> proj_deg;

    std::uint64_t max_degree(AttrSet a) const { return max_deg[local_mask(schema, a)]; }
    std::uint64_t projected(AttrSet a, AttrSet b) const {
        return proj_deg[(std::size_t{local_mask(schema, a)} << arity) | local_mask(schema, b)];
    }
};

DegreeStats compute_degrees(const Relation& rel);

/// deg(v, R, A) for every v in pi_A(R).
std::map<std::vector<Value>, std::uint64_t> degree_table(const Relation& rel, AttrSet a);

/// Log-space statistics consumed by the bound programs and the planner.
/// ld[mA << arity | mB] = log d_{pi_B R, A} for A subset of B (natural log, or
/// exponent units for symbolic fixtures). ld[0 | full] = log |R|.
struct RelStats {
    AttrSet schema;
    int arity = 0;
    std::vector<double> ld;
    bool empty = false;

    explicit RelStats(AttrSet s = {}) : schema(s), arity(s.size()), ld(std::size_t{1} << (2 * s.size()), 0.0) {}

    double& at(AttrSet a, AttrSet b) {
        return ld[(std::size_t{local_mask(schema, a)} << arity) | local_mask(schema, b)];
    }
    double at(AttrSet a, AttrSet b) const {
        return ld[(std::size_t{local_mask(schema, a)} << arity) | local_mask(schema, b)];
    }
    double log_size() const { return at({}, schema); }
    double log_proj(AttrSet b) const { return at({}, b); }
    /// log d_{R,A}.
    double log_deg(AttrSet a) const { return at(a, schema); }
};

RelStats log_stats(const DegreeStats& d);
RelStats log_stats(const Relation& rel);
std::vector<RelStats> log_stats(const Query& q);

/// Bucket index l with L^l <= d < L^(l+1).
int bucket_of(std::uint64_t d, std::uint64_t L);

/// Bucket of every subset (local mask order) for row `row` of a relation.
std::vector<std::uint8_t> tuple_signature(const DegreeStats& stats, std::size_t row, std::uint64_t L);

struct Fragment {
    std::vector<std::uint8_t> signature;
    Relation rel;
    DegreeStats stats;
};

/// Degree-uniformized query: per relation, the realized signature fragments;
/// realized configurations are the cross product of the fragment lists.
struct PartitionedQuery {
    Query query;
    std::uint64_t L = 2;
    std::vector<DegreeStats> base_stats;
    std::vector<std::vector<Fragment>> parts;

    std::size_t config_count() const;
    /// Fragment index per relation for configuration `id` (mixed radix).
    std::vector<int> config(std::size_t id) const;
    Query config_query(std::size_t id) const;
    std::vector<RelStats> config_stats(std::size_t id) const;
    /// Configurations whose fragments agree pairwise on the projections onto
    /// shared attributes. The join of every other configuration is empty.
    std::vector<std::size_t> live_configs() const;
    /// IN of the original query (bounds use it as the exponent base).
    double in_size() const { return query.in_size(); }
};

PartitionedQuery partition_catalog(const Query& q, std::uint64_t L);

/// Empty iff the partition is complete, disjoint, signature-consistent and
/// satisfies the implicit-degree inequality for every fragment.
std::vector<std::string> validate_partition(const PartitionedQuery& pq);

}  // namespace degjoin
