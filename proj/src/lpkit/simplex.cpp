#include "degjoin/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace degjoin {

namespace {

constexpr double kPivotTol = 1e-11;

/// Tableau in canonical form: rows_ x (cols_ + 1), last column is the rhs.
class Tableau {
public:
    Tableau(int rows, int cols) : m_(rows), n_(cols), t_(static_cast<std::size_t>(rows) * (cols + 1), 0.0) {}

    double& at(int r, int c) { return t_[static_cast<std::size_t>(r) * (n_ + 1) + c]; }
    double at(int r, int c) const { return t_[static_cast<std::size_t>(r) * (n_ + 1) + c]; }
    double& rhs(int r) { return at(r, n_); }
    double rhs(int r) const { return at(r, n_); }

    void pivot(int pr, int pc) {
        double p = at(pr, pc);
        for (int c = 0; c <= n_; ++c) at(pr, c) /= p;
        for (int r = 0; r < m_; ++r) {
            if (r == pr) continue;
            double f = at(r, pc);
            if (f == 0.0) continue;
            for (int c = 0; c <= n_; ++c) at(r, c) -= f * at(pr, c);
            at(r, pc) = 0.0;
        }
    }

    int rows() const { return m_; }
    int cols() const { return n_; }

private:
    int m_, n_;
    std::vector<double> t_;
};

/// Minimizes cost·x over the tableau's feasible set starting from `basis`.
/// Columns with allowed[c] == false never enter. Returns false if unbounded.
bool run_simplex(Tableau& tab, std::vector<int>& basis, const std::vector<double>& cost,
                 const std::vector<bool>& allowed) {
    const int m = tab.rows(), n = tab.cols();
    std::vector<double> reduced(n);
    for (int iter = 0; iter < 100000; ++iter) {
        // Reduced costs c_j - c_B B^{-1} A_j.
        for (int c = 0; c < n; ++c) {
            double z = cost[c];
            for (int r = 0; r < m; ++r) z -= cost[basis[r]] * tab.at(r, c);
            reduced[c] = z;
        }
        int enter = -1;
        for (int c = 0; c < n; ++c) {
            if (allowed[c] && reduced[c] < -kLpTol) {
                enter = c;
                break;
            }
        }
        if (enter < 0) return true;
        int leave = -1;
        double best = std::numeric_limits<double>::infinity();
        for (int r = 0; r < m; ++r) {
            double a = tab.at(r, enter);
            if (a <= kPivotTol) continue;
            double ratio = tab.rhs(r) / a;
            if (ratio < best - 1e-12 || (std::abs(ratio - best) <= 1e-12 && leave >= 0 && basis[r] < basis[leave])) {
                best = ratio;
                leave = r;
            }
        }
        if (leave < 0) return false;
        tab.pivot(leave, enter);
        basis[leave] = enter;
    }
    throw std::runtime_error("simplex: iteration limit reached");
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
    const int nv = lp.vars();
    // Free variables are split into a positive and a negative part.
    std::vector<int> neg_col(nv, -1);
    int ncols = nv;
    for (int j = 0; j < nv; ++j)
        if (lp.free_var[j]) neg_col[j] = ncols++;

    const int m = static_cast<int>(lp.rows.size());
    int slack_base = ncols;
    int nslack = 0;
    int nart = 0;
    for (const auto& row : lp.rows) {
        if (row.rel != Rel::Eq) ++nslack;
        // A slack with coefficient +1 after sign normalization starts basic.
        bool slack_basic = (row.rel == Rel::Le && row.rhs >= 0) || (row.rel == Rel::Ge && row.rhs < 0);
        if (!slack_basic) ++nart;
    }
    int art_base = slack_base + nslack;
    int total = art_base + nart;

    Tableau tab(m, total);
    std::vector<int> basis(m);
    int s = slack_base;
    int a = art_base;
    for (int r = 0; r < m; ++r) {
        const auto& row = lp.rows[r];
        if (static_cast<int>(row.coef.size()) != nv) throw std::invalid_argument("solve_lp: row width mismatch");
        double sign = row.rhs < 0 ? -1.0 : 1.0;
        for (int j = 0; j < nv; ++j) {
            tab.at(r, j) = sign * row.coef[j];
            if (neg_col[j] >= 0) tab.at(r, neg_col[j]) = -sign * row.coef[j];
        }
        int slack_col = -1;
        if (row.rel == Rel::Le) tab.at(r, slack_col = s++) = sign;
        if (row.rel == Rel::Ge) tab.at(r, slack_col = s++) = -sign;
        tab.rhs(r) = sign * row.rhs;
        if (slack_col >= 0 && tab.at(r, slack_col) > 0) {
            basis[r] = slack_col;
        } else {
            tab.at(r, a) = 1.0;
            basis[r] = a++;
        }
    }

    // Phase 1: minimize the sum of artificials.
    std::vector<double> cost1(total, 0.0);
    for (int c = art_base; c < total; ++c) cost1[c] = 1.0;
    std::vector<bool> allowed(total, true);
    if (nart > 0) run_simplex(tab, basis, cost1, allowed);
    double infeas = 0;
    for (int r = 0; r < m; ++r)
        if (basis[r] >= art_base) infeas += tab.rhs(r);
    LpSolution sol;
    if (infeas > 1e-7) {
        sol.status = LpStatus::Infeasible;
        return sol;
    }
    // Drive remaining artificials out of the basis where possible.
    for (int r = 0; r < m; ++r) {
        if (basis[r] < art_base) continue;
        for (int c = 0; c < art_base; ++c) {
            if (std::abs(tab.at(r, c)) > 1e-9) {
                tab.pivot(r, c);
                basis[r] = c;
                break;
            }
        }
    }
    for (int c = art_base; c < total; ++c) allowed[c] = false;

    // Phase 2.
    std::vector<double> cost2(total, 0.0);
    double dir = lp.sense == Sense::Max ? -1.0 : 1.0;
    for (int j = 0; j < nv; ++j) {
        cost2[j] = dir * lp.objective[j];
        if (neg_col[j] >= 0) cost2[neg_col[j]] = -dir * lp.objective[j];
    }
    if (!run_simplex(tab, basis, cost2, allowed)) {
        sol.status = LpStatus::Unbounded;
        return sol;
    }
    std::vector<double> val(total, 0.0);
    for (int r = 0; r < m; ++r) val[basis[r]] = tab.rhs(r);
    sol.status = LpStatus::Optimal;
    sol.x.assign(nv, 0.0);
    for (int j = 0; j < nv; ++j) {
        sol.x[j] = val[j] - (neg_col[j] >= 0 ? val[neg_col[j]] : 0.0);
        if (!lp.free_var[j] && sol.x[j] < 0 && sol.x[j] > -1e-12) sol.x[j] = 0.0;
    }
    sol.objective = 0;
    for (int j = 0; j < nv; ++j) sol.objective += lp.objective[j] * sol.x[j];
    for (int r = 0; r < m; ++r) {
        double lhs = 0;
        for (int j = 0; j < nv; ++j) lhs += lp.rows[r].coef[j] * sol.x[j];
        double scale = std::max(1.0, std::abs(lp.rows[r].rhs));
        if (std::abs(lhs - lp.rows[r].rhs) <= 1e-9 * scale) sol.tight.push_back(r);
    }
    return sol;
}

double max_violation(const LinearProgram& lp, const std::vector<double>& x) {
    double worst = 0;
    for (int j = 0; j < lp.vars(); ++j)
        if (!lp.free_var[j]) worst = std::max(worst, -x[j]);
    for (const auto& row : lp.rows) {
        double lhs = 0;
        for (int j = 0; j < lp.vars(); ++j) lhs += row.coef[j] * x[j];
        double v = 0;
        if (row.rel == Rel::Le) v = lhs - row.rhs;
        if (row.rel == Rel::Ge) v = row.rhs - lhs;
        if (row.rel == Rel::Eq) v = std::abs(lhs - row.rhs);
        worst = std::max(worst, v);
    }
    return worst;
}

}  // namespace degjoin
