#pragma once

#include <functional>
#include <span>
#include <utility>

#include "gpebo/core_math.hpp"
#include "gpebo/immersion.hpp"
#include "gpebo/system.hpp"

namespace gpebo {

// Entries of ξ, Φ (or any co-simulated signal) beyond this magnitude abort the run.
inline constexpr double kDivergenceBound = 1e9;

// Dynamic extension  ξ̇ = W ξ + L,  Φ̇ = W Φ,  Φ(0) = I.
struct GpeboState {
    Vector xi;
    Matrix Phi;
    double t = 0.0;

    static GpeboState initial(const Vector& xi0, double t0 = 0.0);
};

// One time-stamped regression sample  𝒴 = ψ·𝒢(θ)  (𝒢 = identity for an LRE).
struct LreSample {
    double t = 0.0;
    Vector Y;   // p
    Matrix psi; // p × n_ψ
};

// Throws DivergenceError("observer divergence") if ξ or Φ leave the bound.
void check_observer_bound(const GpeboState& st, double bound = kDivergenceBound);

// RK4 step with W, L frozen at (y, u) over the step.
GpeboState gpebo_step(const Immersion& imm, const GpeboState& st, const Vector& y, const Vector& u, double dt,
                      double bound = kDivergenceBound);

// Plant and extension advanced together by one RK4 step; u is held, while W and
// L see the stage value of y = h(x,u) so the extension tracks the continuous
// output exactly as the lifted system does.
std::pair<Vector, GpeboState> cosim_step(const NonlinearSystem& sys, const Immersion& imm, const Vector& x,
                                         const GpeboState& st, const Vector& u, double dt,
                                         double bound = kDivergenceBound);

// x = D(ξ − Φθ).
Vector parameterize_state(const Vector& xi, const Matrix& Phi, const Vector& theta, const Selector& sel);

// Linear readout y = C(u) x  ⇒  𝒴 = C D ξ − y = (C D Φ) θ.
// `C` maps u to the p×n output matrix in the original coordinates.
LreSample build_lre(const std::function<Matrix(const Vector& u)>& C, const Vector& y, const Vector& u,
                    const GpeboState& st, const Selector& sel);

// Trapezoidal ∫ ψᵀψ dt over the (time-ordered) samples.
Matrix excitation_grammian(std::span<const LreSample> samples);

// Smallest eigenvalue exceeds delta_rel × largest (and the largest is positive).
bool grammian_exciting(const Matrix& grammian, double delta_rel);
double min_eigenvalue(const Matrix& sym);

// Stacked regressors have numerical rank `n` at relative tolerance `tol`.
bool rank_identifiable(std::span<const LreSample> samples, int n, double tol = 1e-8);

} // namespace gpebo
