#include <doctest.h>

#include <cmath>

#include "gpebo/benchmarks.hpp"
#include "gpebo/errors.hpp"
#include "gpebo/immersion.hpp"
#include "gpebo/scenario.hpp"

using namespace gpebo;

namespace {

Vector v(std::initializer_list<double> l) {
    Vector out(static_cast<Eigen::Index>(l.size()));
    Eigen::Index i = 0;
    for (double x : l) out(i++) = x;
    return out;
}

} // namespace

TEST_CASE("Levine-Marino residual at x = (1, 2) by hand") {
    const Benchmark b = make_benchmark("levine-marino");
    const Vector x = v({1, 2});
    // f = (2 + 2 − 1, 2); W z + L = (2 + 2 − 1, 2, 4); ∇φ·f = x2·x2 = 4.
    const MatchingResidual r = matching_residual(b.system, b.immersion, x, Vector(0));
    CHECK(max_abs(r.r1) < 1e-15);
    CHECK(max_abs(r.r2) < 1e-15);
    CHECK(max_abs(lift(b.immersion, x) - v({1, 2, 2})) == 0.0);
}

TEST_CASE("Levine-Marino affine field at z = (0, 1, 0.5)") {
    const Benchmark b = make_benchmark("levine-marino");
    const Vector d = affine_field(b.immersion, v({0}), Vector(0), v({0, 1, 0.5}));
    CHECK(max_abs(d - v({1.5, 1, 1})) < 1e-15);
}

TEST_CASE("removing W12 leaves the missing term in r1") {
    const Benchmark b = make_benchmark("levine-marino");
    const Immersion bad = corrupted_immersion(b);
    // At x = (0, 2): φ = 2 and W12 = (1, 0)ᵀ, so r1 = (2, 0).
    const MatchingResidual r = matching_residual(b.system, bad, v({0, 2}), Vector(0));
    CHECK(max_abs(r.r1 - v({2, 0})) < 1e-15);
    CHECK(max_abs(r.r2) < 1e-15);
}

TEST_CASE("robotic leg residual at x = (1,0,0,1,2,0), u = (0,1)") {
    const Benchmark b = make_benchmark("robotic-leg");
    const Vector x = v({1, 0, 0, 1, 2, 0});
    const Vector u = v({0, 1});
    // f = (1, 2, 0, 4, 1, −1) and ∇φ·f = 2 x5 u2 = 4.
    CHECK(max_abs(plant_field(b.system, x, u) - v({1, 2, 0, 4, 1, -1})) < 1e-15);
    const Vector z = lift(b.immersion, x);
    const Vector d = affine_field(b.immersion, readout(b.system, x, u), u, z);
    CHECK(max_abs(d - v({1, 2, 0, 4, 1, -1, 4})) < 1e-15);
    const MatchingResidual r = matching_residual(b.system, b.immersion, x, u);
    CHECK(r.max_abs_sum() < 1e-15);
}

TEST_CASE("maglev lift, readout and fixed point") {
    const Benchmark unit = make_benchmark("maglev", {{"k", 1.0}});
    CHECK(max_abs(lift(unit.immersion, v({2, 0, 0})) - v({2, 0, 0, 2})) == 0.0);

    const Benchmark b = make_benchmark("maglev");
    const double k = 6404e-6;
    CHECK(readout(b.system, v({0.1, 0.5, 0}), v({0}))(0) == doctest::Approx((1.0 / k) * 0.5 * 0.1));

    // At (x1*, 0.01, 0) with u = R y every derivative vanishes.
    MaglevParams p;
    const Vector x = v({p.x1_ref(), 0.01, 0.0});
    const double y = (1.0 - 0.01) * p.x1_ref() / k;
    const Vector f = plant_field(b.system, x, v({p.R * y}));
    CHECK(max_abs(f) < 1e-12);
}

TEST_CASE("oscillator: corrected fourth row matches, miswritten row does not") {
    const Benchmark b = make_benchmark("remark4-oscillator");
    const Vector x = v({0.7, -1.3});
    CHECK(matching_residual(b.system, b.immersion, x, Vector(0)).max_abs_sum() < 1e-14);
    const MatchingResidual bad = matching_residual(b.system, remark4_printed_immersion(), x, Vector(0));
    // d/dt x2³ = −3 x2² x1, printed row gives −3 y x2 + x2³.
    const double expect = -3.0 * 1.69 * 0.7 - (-3.0 * 0.7 * -1.3 + std::pow(-1.3, 3));
    CHECK(bad.r2(1) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("every catalog entry verifies; every corrupted fixture fails") {
    for (const auto& id : benchmark_ids()) {
        CAPTURE(id);
        const Benchmark b = make_benchmark(id);
        const ImmersionReport ok = verify_immersion(b, b.immersion, 200, 3);
        CHECK(ok.pass);
        CHECK(ok.max_total < kMatchingTol);
        const ImmersionReport bad = verify_immersion(b, corrupted_immersion(b), 200, 3);
        CHECK_FALSE(bad.pass);
        CHECK(!bad.worst_location.empty());
    }
}

TEST_CASE("analytic gradients agree with finite differences") {
    const Benchmark b = make_benchmark("bernard-1");
    const Vector x = v({0.3, -0.4, 1.1});
    CHECK(max_abs(b.immersion.grad_phi(x) - finite_difference_grad_phi(b.immersion, x)) < 1e-8);
}

TEST_CASE("selector picks the original coordinates") {
    const Benchmark b = make_benchmark("bernard-2");
    const Selector s(b.immersion);
    CHECK(s.D.rows() == 3);
    CHECK(s.D.cols() == 5);
    CHECK(max_abs(s.select(v({1, 2, 3, 4, 5})) - v({1, 2, 3})) == 0.0);
}

TEST_CASE("dimension errors") {
    const Benchmark b = make_benchmark("levine-marino");
    CHECK_THROWS_AS(lift(b.immersion, v({1, 2, 3})), DimensionError);
    CHECK_THROWS_AS(affine_field(b.immersion, v({0}), Vector(0), v({1, 2})), DimensionError);
}
