#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "degjoin/degree.hpp"
#include "degjoin/lp.hpp"

namespace degjoin {

enum class BoundKind { AGM, DBP, MO, ACTUAL };
const char* to_string(BoundKind k);

/// A cover element (relation index, attribute set).
struct CoverItem {
    int rel;
    AttrSet attrs;
    friend auto operator<=>(const CoverItem&, const CoverItem&) = default;
};
using Cover = std::vector<CoverItem>;

/// A bound carried in natural-log space; `log_value` is -inf for a zero bound.
struct BoundValue {
    BoundKind kind = BoundKind::AGM;
    double log_value = 0;
    double log_in = 1;
    std::vector<double> witness;  ///< w_R (AGM), v_a per universe attribute (DBP), s_A per subset (MO)
    Cover cover;                  ///< DBP only

    double exponent() const { return std::isinf(log_value) ? 0.0 : log_value / log_in; }
    double absolute() const { return std::exp(log_value); }
};

// Log-space kernels over RelStats. `universe` defaults to the union of schemas.

/// min sum w_R log|R| with every universe attribute covered; +inf if infeasible.
double agm_log(const std::vector<RelStats>& rels, AttrSet universe, std::vector<double>* weights = nullptr);

/// Irredundant covers of `universe` by (R, A), A a nonempty subset of
/// attr(R) ∩ universe: the A's union to the universe and every item owns an
/// attribute no other item covers. Deterministic order.
std::vector<Cover> enumerate_covers(const std::vector<AttrSet>& schemas, AttrSet universe);

struct DbpResult {
    double log_value = 0;
    Cover cover;
    std::vector<double> v;  ///< indexed by attribute id
};

/// The degree-based packing program for one cover.
LinearProgram dbp_program(const std::vector<RelStats>& rels, const Cover& cover, AttrSet universe, double L);
/// min over irredundant covers of the packing program; log_value is in natural log.
DbpResult dbp_log(const std::vector<RelStats>& rels, AttrSet universe, double L);

// BoundValue-level operations.

BoundValue agm(const std::vector<RelStats>& rels, double in_size);
BoundValue dbp_config(const std::vector<RelStats>& rels, double L, double in_size);
BoundValue mo_config(const std::vector<RelStats>& rels, double in_size);
BoundValue mo_total(const PartitionedQuery& pq);

struct BoundRow {
    std::size_t config = 0;
    BoundValue agm, dbp, mo;
};

struct BoundReport {
    double in_size = 0;
    std::vector<BoundRow> rows;
    double agm_total = 0, dbp_total = 0, mo_total = 0;
    double agm_query = 0;  ///< AGM of the unpartitioned query
    bool has_actual = false;
    double actual = 0;
    std::vector<std::string> violations;
};

BoundReport bound_report(const PartitionedQuery& pq, const double* actual = nullptr);

}  // namespace degjoin
