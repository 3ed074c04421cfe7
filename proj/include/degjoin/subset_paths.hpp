#pragma once

#include <vector>

#include "degjoin/degree.hpp"

namespace degjoin {

/// One edge of the projection-size constraint graph. A degree edge from U
/// extends U by B using relation `rel` (weight d(B ∩ U, B, rel)); a
/// projection edge drops attributes at zero cost.
struct PathStep {
    AttrSet from;
    AttrSet to;
    int rel = -1;        ///< -1 for a projection edge
    AttrSet extend;      ///< B, the relation-side attribute set of a degree edge
    double weight = 0;
};

/// Shortest distances over the subsets of `universe`. distance(T) is the
/// largest value of s_T in the difference-constraint program with s_source = 0,
/// i.e. m_T when source is empty.
class SubsetPaths {
public:
    SubsetPaths(const std::vector<RelStats>& rels, AttrSet universe, AttrSet source = {});

    double distance(AttrSet target) const { return dist_[index(target)]; }
    /// Edges from the source to `target` in order.
    std::vector<PathStep> chain(AttrSet target) const;
    AttrSet universe() const { return universe_; }
    AttrSet source() const { return source_; }

private:
    std::size_t index(AttrSet s) const;

    AttrSet universe_;
    AttrSet source_;
    std::vector<double> dist_;
    std::vector<PathStep> pred_;
};

/// Convenience: m_T with an empty source.
double m_value(const std::vector<RelStats>& rels, AttrSet target);

}  // namespace degjoin
