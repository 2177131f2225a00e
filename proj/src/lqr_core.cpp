#include "softcilqr/lqr_core.hpp"

#include <sstream>
#include <stdexcept>

namespace softcilqr {

namespace {

Eigen::MatrixXd riccati_map(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                            const Eigen::MatrixXd& Q, const Eigen::MatrixXd& R,
                            const Eigen::MatrixXd& P) {
    const Eigen::MatrixXd BtPA = B.transpose() * P * A;
    const Eigen::MatrixXd S = B.transpose() * P * B + R;
    return A.transpose() * P * A + Q -
           A.transpose() * P * B * S.ldlt().solve(BtPA);
}

}  // namespace

RiccatiSolution solve_dare(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                           const Eigen::MatrixXd& Q, const Eigen::MatrixXd& R,
                           double tol, int max_iter) {
    const auto n = A.rows();
    if (A.cols() != n || B.rows() != n || Q.rows() != n || Q.cols() != n ||
        R.rows() != B.cols() || R.cols() != B.cols())
        throw std::invalid_argument("solve_dare: dimension mismatch");
    if ((Q - Q.transpose()).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("solve_dare: Q must be symmetric");

    RiccatiSolution sol;
    Eigen::MatrixXd P = Q;
    for (int it = 1; it <= max_iter; ++it) {
        Eigen::MatrixXd Pn = riccati_map(A, B, Q, R, P);
        Pn = 0.5 * (Pn + Pn.transpose()).eval();
        const double diff = (Pn - P).cwiseAbs().maxCoeff();
        P = Pn;
        if (diff < tol) {
            sol.P = P;
            sol.iterations = it;
            sol.residual = dare_residual(A, B, P, Q, R);
            return sol;
        }
    }
    std::ostringstream os;
    os << "solve_dare: no convergence after " << max_iter
       << " iterations, residual " << dare_residual(A, B, P, Q, R);
    throw std::runtime_error(os.str());
}

Eigen::MatrixXd feedback_gain(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                              const Eigen::MatrixXd& P, const Eigen::MatrixXd& R) {
    const Eigen::MatrixXd S = B.transpose() * P * B + R;
    if (S.rows() == 1) {
        if (!(S(0, 0) > 0.0))
            throw std::runtime_error("feedback_gain: B'PB + R not positive");
        return -(B.transpose() * P * A) / S(0, 0);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(S);
    if (!lu.isInvertible())
        throw std::runtime_error("feedback_gain: B'PB + R singular");
    return -lu.solve(B.transpose() * P * A);
}

double lyapunov_residual(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                         const Eigen::MatrixXd& K, const Eigen::MatrixXd& P,
                         const Eigen::MatrixXd& Q, const Eigen::MatrixXd& R) {
    const Eigen::MatrixXd Acl = A + B * K;
    return (P - (Acl.transpose() * P * Acl + Q + K.transpose() * R * K))
        .cwiseAbs()
        .maxCoeff();
}

double dare_residual(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                     const Eigen::MatrixXd& P, const Eigen::MatrixXd& Q,
                     const Eigen::MatrixXd& R) {
    return (P - riccati_map(A, B, Q, R, P)).cwiseAbs().maxCoeff();
}

double spectral_radius(const Eigen::MatrixXd& M) {
    return M.eigenvalues().cwiseAbs().maxCoeff();
}

TerminalWeights terminal_weights(const Eigen::Matrix4d& A, const Eigen::Vector4d& B,
                                 const Eigen::RowVector4d& K, const Eigen::Matrix4d& P,
                                 double M, double T, int n_terms) {
    if (n_terms < 1) throw std::invalid_argument("terminal_weights: n_terms >= 1");
    if (!(M >= 0.0 && M < 1.0))
        throw std::invalid_argument("terminal_weights: M must be in [0, 1)");

    const Eigen::Matrix4d Acl = A + B * K;
    TerminalWeights tw;
    tw.Pterm.setZero();
    Eigen::Matrix4d Aj = Eigen::Matrix4d::Identity();
    double Mj = 1.0;
    for (int j = 0; j < n_terms; ++j) {
        tw.Pterm += Aj.transpose() * P * Aj;
        tw.Tterm += T * Mj * Mj;
        Aj = Acl * Aj;
        Mj *= M;
    }
    tw.Pterm = 0.5 * (tw.Pterm + tw.Pterm.transpose()).eval();
    return tw;
}

}  // namespace softcilqr
