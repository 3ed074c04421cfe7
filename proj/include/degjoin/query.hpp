#pragma once

#include <string>
#include <vector>

#include "degjoin/catalog.hpp"
#include "degjoin/relation.hpp"

namespace degjoin {

/// A join-project query: the natural join of `rels`, projected onto `output`.
struct Query {
    std::vector<Relation> rels;
    std::vector<std::string> names;
    AttrSet output;

    AttrSet attrs() const;
    /// IN, the total number of input tuples.
    double in_size() const;
    bool any_empty() const;
    /// Connected components of the hypergraph restricted to `keep` (attribute
    /// sets), ignoring attributes outside `keep`.
    std::vector<AttrSet> components(AttrSet keep) const;
    bool connected() const { return components(attrs()).size() <= 1; }
};

Query make_query(std::vector<Relation> rels, AttrSet output);
Query make_query(std::vector<Relation> rels);

/// Parses {"relations":[...], "output":[...]} against a catalog.
Query parse_query(const std::string& text, const Catalog& cat);
Query load_query(const std::filesystem::path& path, const Catalog& cat);

/// Exact pi_O(join) by backtracking over attribute values with per-relation
/// membership checks. Oracle use only.
Relation reference_join(const Query& q);

}  // namespace degjoin
