#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "degjoin/degree.hpp"
#include "degjoin/query.hpp"

namespace degjoin {

class WidthError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Generalized hypertree decomposition: a tree (parent pointers, -1 = root)
/// with an attribute bag per node.
struct GHD {
    std::vector<AttrSet> bags;
    std::vector<int> parent;

    std::size_t size() const { return bags.size(); }
};

/// A join tree over relation indices; parent[i] == -1 marks a root.
/// `order` lists nodes leaves-first (every node precedes its parent).
struct JoinTree {
    std::vector<int> parent;
    std::vector<int> order;
};

/// Ear removal. Returns a join tree iff the hypergraph is alpha-acyclic.
std::optional<JoinTree> gyo_acyclic(const std::vector<AttrSet>& edges);

/// Leaves-first order of a forest given by parent pointers.
std::vector<int> leaves_first(const std::vector<int>& parent);

/// Independent validity check: every edge inside some bag, each attribute's
/// bags connected, and the parent array a forest. Returns "" when valid.
std::string check_ghd(const GHD& g, const std::vector<AttrSet>& edges);

/// Full reducer then bottom-up joins with eager projection; output pi_O.
Relation yannakakis(const std::vector<Relation>& rels, const JoinTree& jt, AttrSet output);

inline constexpr int kMaxGhdAttrs = 8;

/// Tree decompositions from every elimination ordering of the primal graph,
/// bag families reduced and deduplicated, plus all edge contractions of each.
/// Throws WidthError when the attribute count exceeds kMaxGhdAttrs.
std::vector<GHD> enumerate_ghds(const std::vector<AttrSet>& edges, int max_bags);

/// Sorted bag list; two GHDs with the same family are treated as equal.
std::vector<AttrSet> bag_family(const GHD& g);

/// Connects a bag family into a tree by a maximum-weight spanning tree on
/// intersection sizes. The result may be invalid if no junction tree exists.
GHD tree_from_bags(std::vector<AttrSet> bags);

/// min over GHDs of max over bags of the AGM of the relations projected to
/// the bag, in the units of `stats` (natural log for data). Also returns the
/// argmin GHD.
double fhw_log(const std::vector<RelStats>& stats, const std::vector<GHD>& ghds, std::size_t* best = nullptr);
double fhw_log(const std::vector<RelStats>& stats, int max_bags);

struct ConfigWidth {
    std::size_t config = 0;
    double mw_log = 0;
    GHD ghd;
};

struct WidthReport {
    double in_size = 0;
    double fhw = 0;      ///< exponent base IN
    double m_width = 0;  ///< exponent base IN
    GHD fhw_ghd;
    std::vector<ConfigWidth> configs;
};

/// min over GHDs of max over bags of m_bag for one configuration.
double mw_log(const std::vector<RelStats>& stats, const std::vector<GHD>& ghds, std::size_t* best = nullptr);

WidthReport m_width(const PartitionedQuery& pq, int max_bags);

/// Walks the shortest-path chain to `target` (projection for drop edges, join
/// with pi_B R for degree edges). Contains pi_target(join of rels).
Relation chain_materialize(const std::vector<Relation>& rels, const std::vector<RelStats>& stats, AttrSet target);

/// Executes one configuration's query through one GHD.
Relation ghd_execute_config(const Query& q, const GHD& g);

/// Bag relations via chain_materialize, semijoined with every pi_bag R, then
/// Yannakakis over the GHD tree. One GHD per live configuration (in
/// live_configs order); union of outputs.
Relation ghd_execute(const PartitionedQuery& pq, const std::vector<GHD>& per_config);
/// Chooses the best m-width GHD per configuration, then executes.
Relation ghd_execute(const PartitionedQuery& pq, int max_bags);

}  // namespace degjoin
