#pragma once

#include <Eigen/Dense>

namespace softcilqr {

enum class LpStatus { Optimal, Infeasible, Unbounded };

// Inequality-form linear program: maximize c'x subject to A_ub * x <= b_ub,
// x unrestricted in sign.
struct LpProblem {
    Eigen::VectorXd c;
    Eigen::MatrixXd A_ub;
    Eigen::VectorXd b_ub;
};

struct LpOutcome {
    LpStatus status = LpStatus::Infeasible;
    double value = 0.0;
    Eigen::VectorXd point;
};

// Two-phase primal simplex on the slack-augmented standard form (free
// variables split as x = x+ - x-), dense tableau, Bland's anti-cycling
// pivot rule. Throws std::invalid_argument on dimension mismatch.
LpOutcome solve_lp(const LpProblem& p);

}  // namespace softcilqr
