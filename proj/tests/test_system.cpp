#include <doctest.h>

#include <cmath>

#include "gpebo/errors.hpp"
#include "gpebo/system.hpp"

using namespace gpebo;

namespace {

// ẋ1 = x2, ẋ2 = −x1 + u, y = x1.
NonlinearSystem oscillator() {
    NonlinearSystem s;
    s.n = 2;
    s.m = 1;
    s.p = 1;
    s.f = [](const Vector& x, const Vector& u) {
        Vector d(2);
        d << x(1), -x(0) + u(0);
        return d;
    };
    s.h = [](const Vector& x, const Vector&) { return Vector::Constant(1, x(0)); };
    return s;
}

} // namespace

TEST_CASE("plant_step follows the exact flow of a linear oscillator") {
    const NonlinearSystem s = oscillator();
    Vector x(2);
    x << 1.0, 0.0;
    const Vector u = Vector::Zero(1);
    const double dt = 1e-3;
    for (int k = 0; k < 1000; ++k) x = plant_step(s, x, u, dt, k * dt);
    CHECK(x(0) == doctest::Approx(std::cos(1.0)).epsilon(1e-12));
    CHECK(x(1) == doctest::Approx(-std::sin(1.0)).epsilon(1e-12));
}

TEST_CASE("plant_step holds the input over the step") {
    const NonlinearSystem s = oscillator();
    // Constant input 1 from rest: x1 = 1 − cos t.
    Vector x = Vector::Zero(2);
    const Vector u = Vector::Ones(1);
    for (int k = 0; k < 100; ++k) x = plant_step(s, x, u, 0.01);
    CHECK(x(0) == doctest::Approx(1.0 - std::cos(1.0)).epsilon(1e-10));
}

TEST_CASE("readout and dimension checks") {
    const NonlinearSystem s = oscillator();
    Vector x(2);
    x << 0.3, -0.2;
    CHECK(readout(s, x, Vector::Zero(1))(0) == doctest::Approx(0.3));
    CHECK_THROWS_AS(plant_field(s, Vector::Zero(3), Vector::Zero(1)), DimensionError);
    CHECK_THROWS_AS(plant_field(s, x, Vector::Zero(2)), DimensionError);
    CHECK_THROWS_AS(readout(s, Vector::Zero(1), Vector::Zero(1)), DimensionError);
    CHECK_THROWS_AS(plant_step(s, x, Vector::Zero(1), -1.0), ValidationError);
}

TEST_CASE("input policy forwards its arguments") {
    InputPolicy p{"state-feedback", [](double t, const Vector& y, const Vector& xh) {
                      return Vector::Constant(1, t + y(0) + xh(1));
                  }};
    CHECK(p(1.0, Vector::Constant(1, 2.0), Vector::Constant(2, 3.0))(0) == doctest::Approx(6.0));
}
