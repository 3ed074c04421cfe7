#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "degjoin/degree.hpp"
#include "degjoin/query.hpp"

namespace degjoin {

/// A generated query together with its attribute names (by id).
struct Instance {
    Query query;
    std::vector<std::string> attr_names;
};

struct RandomParams {
    int max_relations = 5;
    int max_arity = 4;
    int max_attrs = 6;
    int max_tuples = 60;
    int domain = 8;
};

/// Seeded random instance within the given limits. Relations are connected
/// through shared attributes and the output is all attributes.
Instance random_instance(std::uint64_t seed, const RandomParams& p = {});

/// Tripartite triangle R(A,B), S(B,C), T(A,C) where every relation is the
/// circulant graph x_i -> y_{(i+k) mod n}, k < d, with n = N / d.
Instance regular_triangle(std::size_t N, std::size_t d);

/// Cycle R_i(A_i, A_{i+1 mod n}). Matching relations have N tuples of degree 1.
Instance matching_cycle(int n, std::size_t N);
/// Cycle whose relations mix a perfect matching with a dense sqrt(N) x sqrt(N)
/// block, so heavy and light configurations both occur.
Instance skewed_cycle(int n, std::size_t N);

/// Path R_i(A_i, A_{i+1}), i < n, each relation a random graph.
Instance chain(int n, std::size_t N, std::uint64_t seed);

/// K_{2,m}: source S, sink T, middle M_i, relations (S,M_i) and (M_i,T).
Instance k2n(int m, std::size_t N, std::uint64_t seed);

/// A 1-series-parallel query: one relation per edge along each path, plus an
/// optional direct (S,T) relation. Lengths count edges.
Instance series_parallel(const std::vector<int>& path_lengths, bool direct_edge, std::size_t N,
                         std::uint64_t seed);

// Symbolic statistics (exponents of a size parameter).

/// Binary relation stats over {x, y}: size s, projections px, py and degrees
/// dx = log d_{R,{x}}, dy = log d_{R,{y}}. Other entries follow from these.
RelStats binary_stats(AttrId x, AttrId y, double s, double px, double py, double dx, double dy);

/// Uniform stats on a graph query: every relation has size s, projections s - delta
/// and degree delta on both sides.
std::vector<RelStats> uniform_graph_stats(const std::vector<std::pair<AttrId, AttrId>>& edges, double s,
                                          double delta);

/// Edges of the n-cycle, the path with n edges, and K_{2,m} (S = 0, T = 1).
std::vector<std::pair<AttrId, AttrId>> cycle_edges(int n);
std::vector<std::pair<AttrId, AttrId>> path_edges(int n);
std::vector<std::pair<AttrId, AttrId>> k2n_edges(int m);

}  // namespace degjoin
