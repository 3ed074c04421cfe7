#pragma once

#include <cstdint>
#include <vector>

#include "degjoin/relation.hpp"

namespace degjoin {

/// Attribute-at-a-time join: each relation is sorted in the global attribute
/// order and candidate values are intersected through binary searches.
/// `ops` (if given) is incremented once per candidate value and per probe.
Relation generic_join(const std::vector<Relation>& rels, const std::vector<AttrId>& order, AttrSet output,
                      std::uint64_t* ops = nullptr);

/// Ascending attribute order over the union of schemas.
Relation generic_join(const std::vector<Relation>& rels, AttrSet output, std::uint64_t* ops = nullptr);

}  // namespace degjoin
