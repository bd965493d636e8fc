#include "gpebo/system.hpp"

namespace gpebo {

namespace {

void check_dims(const NonlinearSystem& sys, const Vector& x, const Vector& u) {
    if (x.size() != sys.n || u.size() != sys.m) {
        throw DimensionError("plant: state/input dimensions do not match the system");
    }
}

} // namespace

Vector plant_field(const NonlinearSystem& sys, const Vector& x, const Vector& u) {
    check_dims(sys, x, u);
    Vector dx = sys.f(x, u);
    if (dx.size() != sys.n) {
        throw DimensionError("plant: f returned a vector of the wrong length");
    }
    return dx;
}

Vector plant_step(const NonlinearSystem& sys, const Vector& x, const Vector& u, double dt, double t) {
    check_dims(sys, x, u);
    return rk4_step([&](double, const Vector& s) { return plant_field(sys, s, u); }, t, x, dt);
}

Vector readout(const NonlinearSystem& sys, const Vector& x, const Vector& u) {
    check_dims(sys, x, u);
    Vector y = sys.h(x, u);
    if (y.size() != sys.p) {
        throw DimensionError("plant: h returned a vector of the wrong length");
    }
    return y;
}

} // namespace gpebo
