#pragma once

#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include "degjoin/darts.hpp"

namespace degjoin::detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// One transform applied to a subproblem, with its derived children.
/// Heavy and Light have one child. Split case 1 has (G'1, G''1, G''2) and
/// case 2 has (G'1, G'2); every R_S / R_X stand-in is the last relation.
struct Candidate {
    NodeKind kind = NodeKind::Base;
    double term = 0;
    AttrId heavy_attr = -1;
    AttrSet light_x;
    Cover light_cover;
    std::vector<double> light_v;
    AttrSet split_s;
    int split_case = 0;
    std::vector<int> g1, g2;
    std::vector<Subproblem> children;
};

struct Evaluated {
    double value = kInf;
    int nodes = 0;
    bool uses_p = false;
};

double add_cost(CostMode mode, double a, double b);
double in_log(CostMode mode, const std::vector<RelStats>& rels);
Subproblem normalize(Subproblem g);
RelStats restrict_stats(const RelStats& rs, AttrSet keep);
/// Stats of a relation over `target` bounded by conditioned shortest paths.
RelStats derived_stats(const std::vector<RelStats>& rels, AttrSet universe, AttrSet target);

}  // namespace degjoin::detail

namespace degjoin {
/// Transforms applicable to a normalized subproblem, in generation order.
/// `dbp_cache` (optional) memoizes Light's packing bounds by projected stats.
std::vector<detail::Candidate> candidates(const Subproblem& g, CostMode mode, int max_split,
                                          std::unordered_map<std::string, DbpResult>* dbp_cache = nullptr);
}  // namespace degjoin
