#include <doctest.h>

#include <cmath>

#include "gpebo/errors.hpp"
#include "gpebo/estimator.hpp"

using namespace gpebo;

namespace {

// ψ(t) = [sin t, cos 2t, 1] is persistently exciting.
LreSample synthetic(double t, const Vector& theta) {
    LreSample s;
    s.t = t;
    s.psi = Matrix(1, 3);
    s.psi << std::sin(t), std::cos(2.0 * t), 1.0;
    s.Y = s.psi * theta;
    return s;
}

} // namespace

TEST_CASE("gain construction and validation") {
    const LsDremGains g = LsDremGains::make(680.0, Vector::Ones(4), 10.0, 150.0, 14);
    CHECK(g.gamma_G == 680.0);
    CHECK(g.k == doctest::Approx(std::sqrt(14.0) / 10.0));
    CHECK(LsDremGains::make(1.0, Vector::Ones(1), 2.0, 1.0, 1).k == doctest::Approx(0.5));
    CHECK(LsDremGains::make(1.0, Vector::Ones(1), 1.0, 1.0, 3, 5.0, 2.0).gamma_G == 2.0);
    CHECK_THROWS_AS(LsDremGains::make(0.0, Vector::Ones(1), 1.0, 1.0, 3), ValidationError);
    CHECK_THROWS_AS(LsDremGains::make(1.0, Vector::Zero(1), 1.0, 1.0, 3), ValidationError);
    CHECK_THROWS_AS(LsDremGains::make(1.0, Vector::Ones(1), 1.0, 1.0, 3, 0.5), ValidationError);
}

TEST_CASE("initial state and mixing at t = 0") {
    const LsDremGains g = LsDremGains::make(680.0, Vector::Ones(4), 10.0, 150.0, 14);
    const Vector G0 = Vector::Constant(14, 1.5);
    LsDremState st = lsdrem_init(G0, Vector::Constant(4, 1.5), g);
    CHECK(max_abs(st.F - 0.1 * Matrix::Identity(14, 14)) == 0.0);
    CHECK(st.zeta == 1.0);
    // ζ f₀ F = I: the mixing matrix vanishes.
    const DremSignals d0 = drem_mix(st, G0, g.f0);
    CHECK(d0.Delta == 0.0);
    CHECK(max_abs(d0.Yvec) < 1e-14);
    // ζ = 0: Δ = 1 and 𝐘 = 𝒢̂.
    st.zeta = 0.0;
    st.G_hat = Vector::LinSpaced(14, 1.0, 14.0);
    const DremSignals d1 = drem_mix(st, G0, g.f0);
    CHECK(d1.Delta == 1.0);
    CHECK(max_abs(d1.Yvec - st.G_hat) < 1e-14);
    CHECK_THROWS_AS(lsdrem_init(G0, Vector::Ones(3), g), DimensionError);
}

TEST_CASE("mixing identity holds and estimates converge on a noise-free regression") {
    Vector theta(3);
    theta << 0.7, -1.2, 2.0;
    const LsDremGains g = LsDremGains::make(5.0, Vector::Constant(3, 50.0), 1.0, 2.0, 3, 10.0);
    const Vector G0 = Vector::Zero(3);
    LsDremState st = lsdrem_init(G0, Vector::Zero(3), g);
    const double dt = 1e-3;
    double worst_mix = 0.0;
    for (int k = 0; k < 20000; ++k) {
        const LreSample s = synthetic(k * dt, theta);
        const DremSignals d = drem_mix(st, G0, g.f0);
        for (int i = 0; i < 3; ++i) {
            worst_mix = std::max(worst_mix, std::abs(d.Yvec(i) - d.Delta * theta(i)) / (1.0 + std::abs(theta(i))));
        }
        st = lsdrem_step(st, s, g, G0, dt);
    }
    CHECK(worst_mix < 1e-8);
    CHECK((st.theta_hat - theta).norm() < 1e-6);
    CHECK((st.G_hat - theta).norm() < 1e-6);
    CHECK(st.steps == 20000);
}

TEST_CASE("least-squares-only mode reports the leading entries") {
    Vector theta(3);
    theta << 1.0, 2.0, 3.0;
    const LsDremGains g = LsDremGains::make(5.0, Vector::Ones(2), 1.0, 2.0, 3, 10.0);
    const Vector G0 = Vector::Zero(3);
    LsDremState st = lsdrem_init(G0, Vector::Zero(2), g);
    for (int k = 0; k < 100; ++k) {
        st = lsdrem_step(st, synthetic(k * 1e-2, theta), g, G0, 1e-2, EstimatorMode::LsOnly);
        REQUIRE(max_abs(st.theta_hat - st.G_hat.head(2)) == 0.0);
    }
}

TEST_CASE("forgetting rate") {
    const LsDremGains g = LsDremGains::make(1.0, Vector::Ones(1), 1.0, 4.0, 1, 2.0);
    CHECK(forgetting_rate(Matrix::Identity(1, 1), g) == doctest::Approx(2.0));
    CHECK(forgetting_rate(2.0 * Matrix::Identity(1, 1), g) == doctest::Approx(0.0));
}

TEST_CASE("failures are reported") {
    const LsDremGains g = LsDremGains::make(1.0, Vector::Ones(3), 1.0, 1.0, 3, 10.0);
    const Vector G0 = Vector::Zero(3);
    Vector theta = Vector::Ones(3);

    LsDremState bad = lsdrem_init(G0, Vector::Zero(3), g);
    bad.F = -Matrix::Identity(3, 3);
    bad.steps = kPdCheckInterval - 1;
    CHECK_THROWS_AS(lsdrem_step(bad, synthetic(0.0, theta), g, G0, 1e-3), EstimatorError);

    LsDremState big = lsdrem_init(G0, Vector::Zero(3), g);
    big.G_hat(0) = 2e9;
    CHECK_THROWS_AS(lsdrem_step(big, synthetic(0.0, theta), g, G0, 1e-3), DivergenceError);

    LreSample wrong;
    wrong.Y = Vector::Zero(1);
    wrong.psi = Matrix::Zero(1, 2);
    CHECK_THROWS_AS(lsdrem_step(lsdrem_init(G0, Vector::Zero(3), g), wrong, g, G0, 1e-3), DimensionError);
}

TEST_CASE("gradient baseline Euler step") {
    LreSample s;
    s.Y = Vector::Ones(1);
    s.psi = Matrix::Ones(1, 1);
    const Vector next = gradient_baseline_step(Vector::Zero(1), s, 1.0, 0.1);
    CHECK(next(0) == doctest::Approx(0.1));
    CHECK_THROWS_AS(gradient_baseline_step(Vector::Zero(1), s, 1.0, 0.0), ValidationError);
}
