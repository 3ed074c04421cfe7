#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "degjoin/bounds.hpp"
#include "degjoin/degree.hpp"
#include "degjoin/query.hpp"

namespace degjoin {

class PlanRefused : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// How costs combine. Concrete stats are natural logs of counts and sums are
/// taken exactly (log-sum-exp). Symbolic stats are exponents of a size
/// parameter N that tends to infinity, so a sum is dominated by its largest
/// term.
enum class CostMode { Concrete, Symbolic };

/// A subproblem of the planner: relation statistics and output attributes.
struct Subproblem {
    std::vector<RelStats> rels;
    AttrSet output;

    AttrSet attrs() const;
};

/// Q and P bounds in log units; +inf means "no bound derivable".
struct CostBound {
    double q = 0;
    double p = 0;
    bool has_q() const;
    bool has_p() const;
};

enum class NodeKind { Base, Heavy, Light, Split };
const char* to_string(NodeKind k);

/// One node of a transform plan. Children refer to derived subproblems whose
/// relation lists follow fixed conventions (see darts.cpp).
struct PlanNode {
    NodeKind kind = NodeKind::Base;
    bool for_p = false;          ///< built to realize the P bound rather than Q
    AttrSet output;
    std::vector<AttrSet> schemas;
    CostBound bound;
    double in_log = 0;           ///< log IN of this subproblem
    double term = 0;             ///< Heavy: log |vals(X)| bound; Light: DBP(G, X)
    int nodes = 1;

    AttrId heavy_attr = -1;
    AttrSet light_x;
    Cover light_cover;
    std::vector<double> light_v;  ///< per attribute id
    AttrSet split_s;
    int split_case = 0;           ///< 1: S within output, 2: output within G2
    std::vector<int> g1, g2;      ///< relation indices of the two sides
    std::vector<std::unique_ptr<PlanNode>> children;
};

struct PlannerOptions {
    CostMode mode = CostMode::Concrete;
    int max_relations = 6;
    int max_attrs = 8;
    std::size_t max_states = 200000;
    int max_split = 3;
};

/// Exhaustive transform search with memoization. Throws PlanRefused when the
/// subproblem is outside the budget or the state cap is hit.
class Planner {
public:
    explicit Planner(PlannerOptions opt = {});
    ~Planner();

    CostBound cost(const Subproblem& g);
    std::unique_ptr<PlanNode> plan(const Subproblem& g);
    std::size_t states() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Q bound of the best plan for symbolic stats (an exponent of N).
double plan_exponent(const Subproblem& g, PlannerOptions opt = {.mode = CostMode::Symbolic});

/// Recomputes every node's bound from its children and its own term and
/// reports the first mismatch ("" if consistent).
std::string check_plan(const PlanNode& root, CostMode mode);

std::string plan_to_string(const PlanNode& root, const std::vector<std::string>* names = nullptr);

struct ExecMetrics {
    std::uint64_t ops = 0;
};

/// Executes a plan against data whose relations match the planned subproblem.
Relation execute_plan(const PlanNode& plan, const std::vector<Relation>& rels, ExecMetrics* m = nullptr);

// Transform primitives on data, exposed for testing.

/// vals(X): intersection of pi_X R over relations containing X.
std::vector<Value> heavy_values(const std::vector<Relation>& rels, AttrId x);
/// Reduced relations for one value x (relations with X restricted to X=x and
/// X dropped; nullary results removed).
std::vector<Relation> heavy_reduce(const std::vector<Relation>& rels, AttrId x, Value v);
/// R_X = join of pi_X R over all relations (generic join over the cover
/// projections, then semijoins with every projection).
Relation light_relation(const std::vector<Relation>& rels, AttrSet x, const Cover& cover,
                        const std::vector<double>& v, std::uint64_t* ops = nullptr);
/// Whether removing S disconnects the attributes outside S.
bool is_articulation_set(const std::vector<AttrSet>& schemas, AttrSet s);

struct DartsConfigMetric {
    std::size_t config = 0;
    double q_log = 0;
    std::uint64_t ops = 0;
    std::string engine;  ///< "darts", "ghd" or "generic"
    std::size_t output = 0;
};

struct DartsResult {
    Relation output;
    std::vector<DartsConfigMetric> configs;
    std::uint64_t ops = 0;
};

DartsResult darts_join(const Query& q, PlannerOptions opt = {});

}  // namespace degjoin
