#pragma once

#include <functional>
#include <string>

#include "gpebo/core_math.hpp"

namespace gpebo {

// Plant  ẋ = f(x,u),  y = h(x,u).
struct NonlinearSystem {
    int n = 0; // state
    int m = 0; // input
    int p = 0; // output
    std::function<Vector(const Vector& x, const Vector& u)> f;
    std::function<Vector(const Vector& x, const Vector& u)> h;
};

// Input law evaluated once per integration step and held over it.
// Arguments: time, measured output, current state estimate.
struct InputPolicy {
    std::string kind; // "open-loop" or "state-feedback"
    std::function<Vector(double t, const Vector& y, const Vector& x_hat)> law;

    Vector operator()(double t, const Vector& y, const Vector& x_hat) const { return law(t, y, x_hat); }
};

// One RK4 step with u held constant over [t, t+dt].
Vector plant_step(const NonlinearSystem& sys, const Vector& x, const Vector& u, double dt, double t = 0.0);

Vector readout(const NonlinearSystem& sys, const Vector& x, const Vector& u);

// Vector field of the plant, with dimension checks.
Vector plant_field(const NonlinearSystem& sys, const Vector& x, const Vector& u);

} // namespace gpebo
