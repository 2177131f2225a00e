#include "softcilqr/barrier_cost.hpp"

#include <cmath>
#include <stdexcept>

namespace softcilqr {

namespace {

// exp with the argument saturated at 50 so aggressive line-search trials
// stay finite while preserving ordering.
inline double sat_exp(double a) { return std::exp(std::min(a, 50.0)); }

}  // namespace

CostWeights make_cost_weights(const Eigen::Matrix4d& Q, double R, double S, double M) {
    if (!(R > 0.0)) throw std::invalid_argument("make_cost_weights: R must be PD");
    if (Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d>(Q).eigenvalues().minCoeff() <=
        0.0)
        throw std::invalid_argument("make_cost_weights: Q must be PD");
    if (!(M >= 0.0 && M < 1.0))
        throw std::invalid_argument("make_cost_weights: M must be in [0, 1)");
    if (S < 0.0) throw std::invalid_argument("make_cost_weights: S must be >= 0");
    CostWeights w;
    w.Q = Q;
    w.R = R;
    w.S = S;
    w.M = M;
    w.T = S / (1.0 - M * M);
    return w;
}

double stage_cost(const StateVec& x, double u, const SlackPair& e,
                  const CostWeights& w, const BarrierParams& b) {
    double c = x.dot(w.Q * x) + w.R * u * u + w.S * e.squaredNorm();
    for (int k = 0; k < 2; ++k)
        c += b.slack_weight * (sat_exp(-e(k)) + sat_exp(e(k) - b.eps_max));
    const double dl = b.delta_bar * (1.0 + e(0));
    c += b.ql1 * (sat_exp(b.ql2 * (-dl - x(0))) + sat_exp(b.ql2 * (x(0) - dl)));
    const double ds = b.steer_bar * (1.0 + e(1));
    c += b.qs1 * (sat_exp(b.qs2 * (-ds - u)) + sat_exp(b.qs2 * (u - ds)));
    for (int k = 0; k < 3; ++k)
        c += b.state_weight *
             (sat_exp(-b.xmax(k) - x(k + 1)) + sat_exp(x(k + 1) - b.xmax(k)));
    return c;
}

double terminal_cost(const StateVec& xN, const SlackPair& eN,
                     const TerminalWeights& tw, const BarrierParams& b) {
    double c = xN.dot(tw.Pterm * xN) + tw.Tterm * eN.squaredNorm();
    for (int k = 0; k < 2; ++k)
        c += b.slack_weight * (sat_exp(-eN(k)) + sat_exp(eN(k) - b.eps_max));
    const double dl = b.delta_bar * (1.0 + eN(0));
    c += b.ql1 * (sat_exp(b.ql2 * (-dl - xN(0))) + sat_exp(b.ql2 * (xN(0) - dl)));
    for (int k = 0; k < 3; ++k)
        c += b.state_weight *
             (sat_exp(-b.xmax(k) - xN(k + 1)) + sat_exp(xN(k + 1) - b.xmax(k)));
    return c;
}

double total_cost(const std::vector<StateVec>& X, const std::vector<double>& U,
                  const std::vector<SlackPair>& E, const CostWeights& w,
                  const BarrierParams& b, const TerminalWeights& tw) {
    const std::size_t N = U.size();
    if (X.size() != N + 1 || E.size() != N + 1)
        throw std::invalid_argument("total_cost: trajectory dimension mismatch");
    double c = 0.0;
    for (std::size_t i = 0; i < N; ++i) c += stage_cost(X[i], U[i], E[i], w, b);
    return c + terminal_cost(X[N], E[N], tw, b);
}

StepDerivatives step_derivatives(const StateVec& x, double u, const SlackPair& e,
                                 const CostWeights& w, const BarrierParams& b) {
    StepDerivatives d;
    d.l = stage_cost(x, u, e, w, b);
    d.lx = 2.0 * (w.Q * x);
    d.lxx = 2.0 * w.Q;
    d.lu = 2.0 * w.R * u;
    d.luu = 2.0 * w.R;

    // lateral barrier, coupled to x(0) and e(0)
    const double dl = b.delta_bar * (1.0 + e(0));
    const double e_lo = sat_exp(b.ql2 * (-dl - x(0)));
    const double e_hi = sat_exp(b.ql2 * (x(0) - dl));
    d.lx(0) += b.ql1 * b.ql2 * (e_hi - e_lo);
    d.lxx(0, 0) += b.ql1 * b.ql2 * b.ql2 * (e_hi + e_lo);

    // steering barrier, coupled to u and e(1)
    const double ds = b.steer_bar * (1.0 + e(1));
    const double s_lo = sat_exp(b.qs2 * (-ds - u));
    const double s_hi = sat_exp(b.qs2 * (u - ds));
    d.lu += b.qs1 * b.qs2 * (s_hi - s_lo);
    d.luu += b.qs1 * b.qs2 * b.qs2 * (s_hi + s_lo);

    // hard-state barriers on the three remaining states
    for (int k = 0; k < 3; ++k) {
        const double h_lo = sat_exp(-b.xmax(k) - x(k + 1));
        const double h_hi = sat_exp(x(k + 1) - b.xmax(k));
        d.lx(k + 1) += b.state_weight * (h_hi - h_lo);
        d.lxx(k + 1, k + 1) += b.state_weight * (h_hi + h_lo);
    }

    // slack gradient/Hessian; He stays diagonal because eps_l and eps_s
    // enter disjoint terms
    for (int k = 0; k < 2; ++k) {
        d.ge(k) = 2.0 * w.S * e(k) +
                  b.slack_weight * (-sat_exp(-e(k)) + sat_exp(e(k) - b.eps_max));
        d.He(k) = 2.0 * w.S +
                  b.slack_weight * (sat_exp(-e(k)) + sat_exp(e(k) - b.eps_max));
    }
    d.ge(0) += -b.ql1 * b.ql2 * b.delta_bar * (e_lo + e_hi);
    d.He(0) += b.ql1 * (b.ql2 * b.delta_bar) * (b.ql2 * b.delta_bar) * (e_lo + e_hi);
    d.ge(1) += -b.qs1 * b.qs2 * b.steer_bar * (s_lo + s_hi);
    d.He(1) += b.qs1 * (b.qs2 * b.steer_bar) * (b.qs2 * b.steer_bar) * (s_lo + s_hi);
    return d;
}

TerminalDerivatives terminal_derivatives(const StateVec& xN, const SlackPair& eN,
                                         const TerminalWeights& tw,
                                         const BarrierParams& b) {
    TerminalDerivatives d;
    d.l = terminal_cost(xN, eN, tw, b);
    d.Vx = 2.0 * (tw.Pterm * xN);
    d.Vxx = 2.0 * tw.Pterm;

    const double dl = b.delta_bar * (1.0 + eN(0));
    const double e_lo = sat_exp(b.ql2 * (-dl - xN(0)));
    const double e_hi = sat_exp(b.ql2 * (xN(0) - dl));
    d.Vx(0) += b.ql1 * b.ql2 * (e_hi - e_lo);
    d.Vxx(0, 0) += b.ql1 * b.ql2 * b.ql2 * (e_hi + e_lo);

    for (int k = 0; k < 3; ++k) {
        const double h_lo = sat_exp(-b.xmax(k) - xN(k + 1));
        const double h_hi = sat_exp(xN(k + 1) - b.xmax(k));
        d.Vx(k + 1) += b.state_weight * (h_hi - h_lo);
        d.Vxx(k + 1, k + 1) += b.state_weight * (h_hi + h_lo);
    }

    for (int k = 0; k < 2; ++k) {
        d.ge(k) = 2.0 * tw.Tterm * eN(k) +
                  b.slack_weight * (-sat_exp(-eN(k)) + sat_exp(eN(k) - b.eps_max));
        d.He(k) = 2.0 * tw.Tterm +
                  b.slack_weight * (sat_exp(-eN(k)) + sat_exp(eN(k) - b.eps_max));
    }
    d.ge(0) += -b.ql1 * b.ql2 * b.delta_bar * (e_lo + e_hi);
    d.He(0) += b.ql1 * (b.ql2 * b.delta_bar) * (b.ql2 * b.delta_bar) * (e_lo + e_hi);
    return d;
}

}  // namespace softcilqr
