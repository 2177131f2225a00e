#include "softcilqr/vehicle_model.hpp"

#include <stdexcept>

namespace softcilqr {

void VehicleParams::validate() const {
    auto pos = [](double v, const char* name) {
        if (!(v > 0.0))
            throw std::invalid_argument(std::string("VehicleParams: ") + name +
                                        " must be positive");
    };
    pos(dt, "dt");
    pos(vx, "vx");
    pos(mass, "m");
    pos(Iz, "Iz");
    pos(lf, "lf");
    pos(lr, "lr");
    pos(Caf, "Caf");
    pos(Car, "Car");
    if (dt >= 1.0) throw std::invalid_argument("VehicleParams: dt must be < 1 s");
}

LinearModel build_model(const VehicleParams& p) {
    p.validate();
    const double c0 = 2.0 * p.Caf + 2.0 * p.Car;
    const double c1 = 2.0 * p.lf * p.Caf - 2.0 * p.lr * p.Car;
    const double c2 = 2.0 * p.lf * p.lf * p.Caf + 2.0 * p.lr * p.lr * p.Car;

    LinearModel m;
    m.A << 1.0, p.dt, 0.0, 0.0,
           0.0, 1.0 - c0 * p.dt / (p.mass * p.vx), c0 * p.dt / p.mass,
               -c1 * p.dt / (p.mass * p.vx),
           0.0, 0.0, 1.0, p.dt,
           0.0, -c1 * p.dt / (p.Iz * p.vx), c1 * p.dt / p.Iz,
               1.0 - c2 * p.dt / (p.Iz * p.vx);
    m.B << 0.0, 2.0 * p.Caf * p.dt / p.mass, 0.0, 2.0 * p.lf * p.Caf * p.dt / p.Iz;
    return m;
}

Accel continuous_accel(const VehicleParams& p, const StateVec& x, double steer) {
    p.validate();
    const double c0 = 2.0 * p.Caf + 2.0 * p.Car;
    const double c1 = 2.0 * p.lf * p.Caf - 2.0 * p.lr * p.Car;
    const double c2 = 2.0 * p.lf * p.lf * p.Caf + 2.0 * p.lr * p.lr * p.Car;

    Accel a;
    a.lat = -c0 / (p.mass * p.vx) * x(kLatRate) + c0 / p.mass * x(kHeading) -
            c1 / (p.mass * p.vx) * x(kHeadingRate) + 2.0 * p.Caf / p.mass * steer;
    a.yaw = -c1 / (p.Iz * p.vx) * x(kLatRate) + c1 / p.Iz * x(kHeading) -
            c2 / (p.Iz * p.vx) * x(kHeadingRate) + 2.0 * p.lf * p.Caf / p.Iz * steer;
    return a;
}

}  // namespace softcilqr
