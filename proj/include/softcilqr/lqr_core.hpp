#pragma once

#include <Eigen/Dense>

namespace softcilqr {

struct RiccatiSolution {
    Eigen::MatrixXd P;
    double residual = 0.0;
    int iterations = 0;
};

// Fixed-point iteration of the Riccati map from P0 = Q, symmetrized each
// step. Throws std::invalid_argument for malformed inputs and
// std::runtime_error (naming the residual) on non-convergence.
RiccatiSolution solve_dare(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                           const Eigen::MatrixXd& Q, const Eigen::MatrixXd& R,
                           double tol = 1e-12, int max_iter = 1000000);

// K = -(B'PB + R)^{-1} B'PA
Eigen::MatrixXd feedback_gain(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                              const Eigen::MatrixXd& P, const Eigen::MatrixXd& R);

// inf-norm of P - [(A+BK)'P(A+BK) + Q + K'RK]
double lyapunov_residual(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                         const Eigen::MatrixXd& K, const Eigen::MatrixXd& P,
                         const Eigen::MatrixXd& Q, const Eigen::MatrixXd& R);

double dare_residual(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                     const Eigen::MatrixXd& P, const Eigen::MatrixXd& Q,
                     const Eigen::MatrixXd& R);

double spectral_radius(const Eigen::MatrixXd& M);

// Collapsed quadratic weights for the terminal window: the n_terms-step
// closed-loop sum of x'Px under x+ = (A+BK)x and of T|e|^2 under e+ = M e.
struct TerminalWeights {
    Eigen::Matrix4d Pterm;
    double Tterm = 0.0;
};

TerminalWeights terminal_weights(const Eigen::Matrix4d& A, const Eigen::Vector4d& B,
                                 const Eigen::RowVector4d& K, const Eigen::Matrix4d& P,
                                 double M, double T, int n_terms);

}  // namespace softcilqr
