#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "degjoin/bounds.hpp"
#include "degjoin/degree.hpp"
#include "degjoin/query.hpp"

namespace degjoin {

/// Seeded 64-bit multiply-xor-shift hash of one attribute value.
std::uint64_t sim_hash(std::uint64_t seed, AttrId a, Value x);

/// Per-attribute share counts round_half_up(exp(v_a)) with floor 1, where v_a
/// is a natural-log exponent (IN^{v_a / log IN} = exp(v_a)).
struct ShareAssignment {
    std::vector<std::uint64_t> share;  ///< indexed by attribute id; 1 when unused
    std::vector<double> v;             ///< raw exponents (natural log)
    AttrSet attrs;

    std::uint64_t processors() const;
    /// Product of rounded shares divided by the product of exp(v_a).
    double rounding_factor() const;
};

ShareAssignment make_shares(const std::vector<double>& v, AttrSet attrs);

struct RoundLoad {
    std::string name;
    std::uint64_t communication = 0;
    std::vector<std::uint64_t> load;  ///< tuples received per processor
};

struct SimMetrics {
    int rounds = 0;
    std::uint64_t total_communication = 0;
    std::uint64_t round1_communication = 0;
    std::uint64_t max_load = 0;
    std::vector<RoundLoad> per_round;

    void add_round(RoundLoad r);
    /// Combines a run executed concurrently on disjoint processors: rounds
    /// take the maximum, communication adds up, loads concatenate per round.
    void merge_parallel(const SimMetrics& other);
    double median_load() const;
};

/// A subrelation pi_A R shipped in the shares round.
struct SubRelation {
    Relation rel;
    AttrSet attrs;
};

/// Logical processor grid over the attributes of a shares assignment.
class SimCluster {
public:
    SimCluster(ShareAssignment shares, std::uint64_t seed);

    std::uint64_t processors() const { return processors_; }
    std::uint64_t bucket(AttrId a, Value x) const;
    const ShareAssignment& shares() const { return shares_; }

private:
    ShareAssignment shares_;
    std::uint64_t seed_;
    std::uint64_t processors_;
};

struct SharesResult {
    Relation output;  ///< union of local joins, over the union of subrelation attributes
    SimMetrics metrics;
};

/// One hypercube round: every tuple of pi_A R goes to each processor whose
/// A-coordinates match its hashes; processors join locally with generic_join.
SharesResult shares_round(const std::vector<SubRelation>& subrels, const ShareAssignment& shares,
                          std::uint64_t seed);

/// Closed form sum over subrelations of |pi_A R| * prod_{a not in A} S_a.
std::uint64_t shares_communication(const std::vector<SubRelation>& subrels, const ShareAssignment& shares);

struct DegreeRun {
    std::map<std::vector<Value>, std::uint64_t> counts;
    SimMetrics metrics;
};

/// Degrees of pi_A R on a (k1, k2) grid: k1 hashes the value, k2 is a seeded
/// random column, then L-ary aggregation along k2.
DegreeRun mr_degree(const Relation& rel, AttrSet a, std::uint64_t L, std::uint64_t seed);

/// ceil(log_L(n / L)) + 1, at least 1.
int mr_degree_rounds(std::size_t n, std::uint64_t L);

struct ConfigSim {
    std::size_t config = 0;
    double dbp_log = 0;
    Cover cover;
    ShareAssignment shares;
    std::uint64_t round1_measured = 0;
    std::uint64_t round1_predicted = 0;
    std::uint64_t output = 0;
};

struct ParallelResult {
    Relation output;
    SimMetrics metrics;
    SimMetrics degree_metrics;
    std::vector<ConfigSim> configs;
};

/// Degree rounds (unless skipped), partition with bucket base L, then per
/// configuration a shares round over the DBP cover and semijoin/intersection
/// rounds for the relations outside the cover.
ParallelResult parallel_join(const Query& q, std::uint64_t L, std::uint64_t seed, bool skip_degree_rounds = false);

struct CommunicationBudget {
    double in = 0;
    double out = 0;
    double dbp_term = 0;  ///< max over configurations of L * exp(DBP(R(c), L))
    double total = 0;
};

CommunicationBudget communication_budget(const PartitionedQuery& pq, std::uint64_t L, double out_size);

}  // namespace degjoin
