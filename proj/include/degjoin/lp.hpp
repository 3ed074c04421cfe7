#pragma once

#include <string>
#include <vector>

namespace degjoin {

enum class Rel { Le, Ge, Eq };
enum class Sense { Min, Max };
enum class LpStatus { Optimal, Infeasible, Unbounded };

struct Constraint {
    std::vector<double> coef;
    Rel rel = Rel::Ge;
    double rhs = 0;
};

/// Dense linear program. Variables are nonnegative unless flagged free.
struct LinearProgram {
    std::vector<std::string> names;
    std::vector<double> objective;
    std::vector<Constraint> rows;
    std::vector<bool> free_var;
    Sense sense = Sense::Min;

    explicit LinearProgram(int nvars = 0, Sense s = Sense::Min)
        : names(nvars), objective(nvars, 0.0), free_var(nvars, false), sense(s) {}
    int vars() const { return static_cast<int>(objective.size()); }
    void add(std::vector<double> coef, Rel rel, double rhs) { rows.push_back({std::move(coef), rel, rhs}); }
};

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    double objective = 0;
    std::vector<double> x;
    /// Indices of constraints satisfied with equality (within tolerance).
    std::vector<int> tight;
};

inline constexpr double kLpTol = 1e-9;

/// Two-phase dense simplex with Bland's rule.
LpSolution solve_lp(const LinearProgram& lp);

/// Largest violation of any constraint (or of nonnegativity) by `x`.
double max_violation(const LinearProgram& lp, const std::vector<double>& x);

}  // namespace degjoin
