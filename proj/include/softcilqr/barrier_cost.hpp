#pragma once

#include <Eigen/Dense>
#include <vector>

#include "softcilqr/lqr_core.hpp"
#include "softcilqr/vehicle_model.hpp"

namespace softcilqr {

// Slack pair [eps_l, eps_s] widening the lateral and steering bounds.
using SlackPair = Eigen::Vector2d;

struct CostWeights {
    Eigen::Matrix4d Q;
    double R = 0.0;
    double S = 0.0;  // slack quadratic weight, applied as S*I2
    double M = 0.0;  // terminal slack decay
    double T = 0.0;  // = S / (1 - M^2)
};

// Derives T from S and M; rejects out-of-range decay and non-PD weights.
CostWeights make_cost_weights(const Eigen::Matrix4d& Q, double R, double S, double M);

struct BarrierParams {
    double ql1 = 5.0;    // lateral barrier weights
    double ql2 = 1.0;
    double qs1 = 80.0;   // steering barrier weights
    double qs2 = 1.0;
    double delta_bar = 0.0;  // relaxed lateral bound (delta_max / (1 + eps_max))
    double steer_bar = 0.0;  // relaxed steering bound
    double eps_max = 0.0;    // shared slack ceiling
    Eigen::Vector3d xmax = Eigen::Vector3d::Zero();  // rate/heading/heading-rate bounds
    // Unit weights on the families the formulation prints without a
    // coefficient; zeroing every leading weight reduces the cost to its
    // quadratic part (used by the LQ-equivalence checks).
    double slack_weight = 1.0;
    double state_weight = 1.0;
};

struct StepDerivatives {
    double l = 0.0;
    Eigen::Vector4d lx = Eigen::Vector4d::Zero();
    double lu = 0.0;
    Eigen::Matrix4d lxx = Eigen::Matrix4d::Zero();
    double luu = 0.0;
    Eigen::RowVector4d lux = Eigen::RowVector4d::Zero();  // no x-u coupling
    Eigen::Vector2d ge = Eigen::Vector2d::Zero();
    Eigen::Vector2d He = Eigen::Vector2d::Zero();  // diagonal slack Hessian
};

struct TerminalDerivatives {
    double l = 0.0;
    Eigen::Vector4d Vx = Eigen::Vector4d::Zero();
    Eigen::Matrix4d Vxx = Eigen::Matrix4d::Zero();
    Eigen::Vector2d ge = Eigen::Vector2d::Zero();
    Eigen::Vector2d He = Eigen::Vector2d::Zero();
};

double stage_cost(const StateVec& x, double u, const SlackPair& e,
                  const CostWeights& w, const BarrierParams& b);

double terminal_cost(const StateVec& xN, const SlackPair& eN,
                     const TerminalWeights& tw, const BarrierParams& b);

double total_cost(const std::vector<StateVec>& X, const std::vector<double>& U,
                  const std::vector<SlackPair>& E, const CostWeights& w,
                  const BarrierParams& b, const TerminalWeights& tw);

StepDerivatives step_derivatives(const StateVec& x, double u, const SlackPair& e,
                                 const CostWeights& w, const BarrierParams& b);

TerminalDerivatives terminal_derivatives(const StateVec& xN, const SlackPair& eN,
                                         const TerminalWeights& tw,
                                         const BarrierParams& b);

}  // namespace softcilqr
