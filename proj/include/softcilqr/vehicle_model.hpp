#pragma once

#include <Eigen/Dense>

namespace softcilqr {

// Lane-frame state [lateral offset (m), its rate (m/s), heading error (rad),
// heading rate (rad/s)].
using StateVec = Eigen::Vector4d;

enum StateIndex { kLatOffset = 0, kLatRate = 1, kHeading = 2, kHeadingRate = 3 };

struct VehicleParams {
    double dt = 0.01;      // s
    double vx = 20.0;      // m/s
    double mass = 1150.0;  // kg
    double Iz = 2000.0;    // kg m^2
    double lf = 1.27;      // m
    double lr = 1.37;      // m
    double Caf = 80000.0;  // N/rad
    double Car = 80000.0;  // N/rad

    void validate() const;  // throws std::invalid_argument
};

// Discrete-time linear lateral dynamics x+ = A x + B u, steering in rad.
struct LinearModel {
    Eigen::Matrix4d A;
    Eigen::Vector4d B;
};

LinearModel build_model(const VehicleParams& p);

// Continuous-time lateral/yaw accelerations at zero road curvature.
struct Accel {
    double lat;  // m/s^2
    double yaw;  // rad/s^2
};
Accel continuous_accel(const VehicleParams& p, const StateVec& x, double steer);

inline StateVec step(const LinearModel& m, const StateVec& x, double steer) {
    return m.A * x + m.B * steer;
}

inline StateVec step_disturbed(const LinearModel& m, const StateVec& x, double steer,
                               const Eigen::Vector4d& w, double sigma) {
    return step(m, x, steer) + sigma * w;
}

}  // namespace softcilqr
