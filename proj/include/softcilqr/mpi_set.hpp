#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "softcilqr/vehicle_model.hpp"

namespace softcilqr {

using Matrix6d = Eigen::Matrix<double, 6, 6>;
using Vector6d = Eigen::Matrix<double, 6, 1>;
using RowVector6d = Eigen::Matrix<double, 1, 6>;

// Physical box bounds from the control-parameter table. Steering entries are
// in the same unit as the solver's command variable.
struct ConstraintBounds {
    double delta_max = 2.0;
    double delta_dot_max = 5.0;
    double theta_max = M_PI / 2.0;
    double theta_dot_max = 0.5;
    double steer_max = M_PI / 6.0;
};

// State-slack system [x; e] with the 18-row mixed constraint polytope
// F x~ + G u <= h.
struct AugmentedSystem {
    Matrix6d Atil;
    Vector6d Btil;
    RowVector6d Ktil;
    Eigen::Matrix<double, 18, 6> Ftil;
    Eigen::Matrix<double, 18, 1> Gtil;
    Eigen::Matrix<double, 18, 1> htil;
    double delta_bar = 0.0;
    double steer_bar = 0.0;
    double eps_max = 0.0;
    double decay = 0.0;  // M
};

AugmentedSystem build_augmented(const LinearModel& model, const Eigen::RowVector4d& K,
                                const ConstraintBounds& bounds, double M,
                                double eps_max);

struct MpiResult {
    int n_nu = 0;
    int n_bar_offset = 1;  // n_nu + 1
    int rows_checked = 18;
};

// Determination of the smallest n such that the step-(n+1) constraints are
// implied by steps 0..n (each row certified by an LP max, Eqs. 19-20).
// Throws std::runtime_error if n_max is exceeded or the constraint set is
// infeasible/unbounded.
MpiResult compute_horizon_bound(const AugmentedSystem& aug, int n_max = 400);

bool mpi_contains(const AugmentedSystem& aug, int n_nu, const Vector6d& xtil,
                  double tol = 1e-9);

// Grid slice of the MPI set over coordinates (dim_a, dim_b) with the other
// coordinates fixed at zero. Grid spans the box bounds of those dimensions.
std::vector<std::pair<double, double>> project_polytope_2d(const AugmentedSystem& aug,
                                                           int n_nu, int dim_a,
                                                           int dim_b, int grid);

// Plain-text cache of determination results keyed by a hash of every input
// the result depends on. Used so repeated CLI invocations skip the LP scan.
class HorizonCache {
  public:
    explicit HorizonCache(std::string path);
    bool lookup(const AugmentedSystem& aug, int* n_nu) const;
    void store(const AugmentedSystem& aug, int n_nu) const;
    static std::string key_of(const AugmentedSystem& aug);

  private:
    std::string path_;
};

}  // namespace softcilqr
