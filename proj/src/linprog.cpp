#include "softcilqr/linprog.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace softcilqr {

namespace {

constexpr double kTol = 1e-9;

// Full dense tableau with an attached objective row. Pivot selection uses
// Bland's rule (smallest eligible index), which cannot cycle.
struct Tableau {
    Eigen::MatrixXd T;           // m x (ncols+1), last column = rhs
    Eigen::RowVectorXd obj;      // reduced costs, last entry = -objective
    std::vector<int> basis;      // basic column per row
    std::vector<char> banned;    // columns excluded from entering
    int m, ncols;

    void pivot(int pr, int pc) {
        T.row(pr) /= T(pr, pc);
        for (int i = 0; i < m; ++i) {
            if (i == pr) continue;
            const double f = T(i, pc);
            if (f != 0.0) T.row(i) -= f * T.row(pr);
        }
        const double f = obj(pc);
        if (f != 0.0) obj -= f * T.row(pr);
        basis[pr] = pc;
    }

    // Sets the objective row for cost vector d (minimization), accounting
    // for the current basis.
    void set_objective(const Eigen::VectorXd& d) {
        obj.setZero(ncols + 1);
        obj.head(ncols) = d.transpose();
        for (int i = 0; i < m; ++i) {
            const double db = d(basis[i]);
            if (db != 0.0) obj -= db * T.row(i);
        }
    }

    // Runs Bland-rule simplex iterations to optimality of the current
    // objective. Returns false if an unbounded ray is detected.
    bool minimize() {
        const long cap = 2000000L + 200L * static_cast<long>(m) * ncols;
        for (long it = 0; it < cap; ++it) {
            int pc = -1;
            for (int j = 0; j < ncols; ++j) {
                if (!banned[j] && obj(j) < -kTol) { pc = j; break; }
            }
            if (pc < 0) return true;  // optimal
            int pr = -1;
            double best = std::numeric_limits<double>::infinity();
            for (int i = 0; i < m; ++i) {
                if (T(i, pc) <= kTol) continue;
                const double ratio = T(i, ncols) / T(i, pc);
                if (ratio < best - kTol ||
                    (ratio < best + kTol && (pr < 0 || basis[i] < basis[pr]))) {
                    best = ratio;
                    pr = i;
                }
            }
            if (pr < 0) return false;  // unbounded
            pivot(pr, pc);
        }
        throw std::runtime_error("solve_lp: pivot cap exceeded");
    }
};

}  // namespace

LpOutcome solve_lp(const LpProblem& p) {
    const int m = static_cast<int>(p.A_ub.rows());
    const int n = static_cast<int>(p.A_ub.cols());
    if (m < 1 || n < 1 || p.c.size() != n || p.b_ub.size() != m)
        throw std::invalid_argument("solve_lp: dimension mismatch");
    if (!p.c.allFinite() || !p.A_ub.allFinite() || !p.b_ub.allFinite())
        throw std::invalid_argument("solve_lp: non-finite entries");

    // Free variables are split as x = x+ - x-; one slack per row; rows with
    // negative rhs are flipped and receive an artificial variable.
    std::vector<int> art_of_row(m, -1);
    int n_art = 0;
    for (int i = 0; i < m; ++i)
        if (p.b_ub(i) < 0.0) art_of_row[i] = n_art++;

    const int ns = 2 * n + m;
    const int nc = ns + n_art;

    Tableau tb;
    tb.m = m;
    tb.ncols = nc;
    tb.T = Eigen::MatrixXd::Zero(m, nc + 1);
    tb.basis.resize(m);
    tb.banned.assign(nc, 0);

    for (int i = 0; i < m; ++i) {
        const double sgn = (p.b_ub(i) < 0.0) ? -1.0 : 1.0;
        for (int j = 0; j < n; ++j) {
            tb.T(i, j) = sgn * p.A_ub(i, j);
            tb.T(i, n + j) = -sgn * p.A_ub(i, j);
        }
        tb.T(i, 2 * n + i) = sgn;
        tb.T(i, nc) = sgn * p.b_ub(i);
        if (art_of_row[i] >= 0) {
            tb.T(i, ns + art_of_row[i]) = 1.0;
            tb.basis[i] = ns + art_of_row[i];
        } else {
            tb.basis[i] = 2 * n + i;
        }
    }

    LpOutcome out;

    // Phase 1: minimize the sum of artificials.
    if (n_art > 0) {
        Eigen::VectorXd d1 = Eigen::VectorXd::Zero(nc);
        d1.tail(n_art).setOnes();
        tb.set_objective(d1);
        tb.minimize();  // bounded below by 0
        double infeas = 0.0;
        for (int i = 0; i < m; ++i)
            if (tb.basis[i] >= ns) infeas += tb.T(i, nc);
        const double feas_tol = kTol * std::max(1.0, p.b_ub.cwiseAbs().maxCoeff());
        if (infeas > feas_tol) {
            out.status = LpStatus::Infeasible;
            return out;
        }
        // Drive remaining artificials out of the basis where possible;
        // rows that cannot pivot are linearly dependent and stay inert.
        for (int i = 0; i < m; ++i) {
            if (tb.basis[i] < ns) continue;
            for (int j = 0; j < ns; ++j) {
                if (std::abs(tb.T(i, j)) > kTol) {
                    tb.pivot(i, j);
                    break;
                }
            }
        }
        for (int j = ns; j < nc; ++j) tb.banned[j] = 1;
    }

    // Phase 2: maximize c'x as minimize (-c)'(x+ - x-).
    Eigen::VectorXd d2 = Eigen::VectorXd::Zero(nc);
    d2.head(n) = -p.c;
    d2.segment(n, n) = p.c;
    tb.set_objective(d2);
    if (!tb.minimize()) {
        out.status = LpStatus::Unbounded;
        return out;
    }

    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < m; ++i) {
        const int b = tb.basis[i];
        if (b < n)
            x(b) += tb.T(i, nc);
        else if (b < 2 * n)
            x(b - n) -= tb.T(i, nc);
    }

    const double viol = (p.A_ub * x - p.b_ub).maxCoeff();
    if (viol > 1e-8)
        throw std::runtime_error("solve_lp: optimal point failed feasibility check");

    out.status = LpStatus::Optimal;
    out.point = x;
    out.value = p.c.dot(x);
    return out;
}

}  // namespace softcilqr
