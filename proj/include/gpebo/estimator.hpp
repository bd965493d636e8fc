#pragma once

#include <optional>

#include "gpebo/core_math.hpp"
#include "gpebo/gpebo.hpp"

namespace gpebo {

// Least squares with forgetting factor followed by DREM mixing into scalar
// regressions  Δ·𝒢_i(θ) = 𝐘_i, one gradient estimator per parameter:
//
//   d𝒢̂/dt = γ_𝒢 F ψᵀ(𝒴 − ψ𝒢̂)          𝒢̂(0) = 𝒢₀
//   dF/dt  = −γ_ℋ F ψᵀψ F + χ F          F(0) = I/f₀
//   dθ̂ᵢ/dt = γᵢ Δ (𝐘ᵢ − Δ θ̂ᵢ)
//   dζ/dt  = −χ ζ                         ζ(0) = 1
//   χ      = χ₀ (1 − ‖F‖_F / k)
//   Δ = det(I − ζ f₀ F),  𝐘 = adj(I − ζ f₀ F)(𝒢̂ − ζ f₀ F 𝒢₀)
//
// With γ_𝒢 = γ_ℋ, noise-free data gives 𝐘 = Δ·𝒢(θ) identically.
struct LsDremGains {
    double gamma_G = 1.0;
    double gamma_H = 1.0;
    Vector gamma_i; // one per estimated parameter
    double f0 = 1.0;
    double chi0 = 1.0;
    double k = 1.0;

    // Validates positivity and k ≥ 1/f₀. When k is not given it defaults to
    // max(1/f₀, ‖F(0)‖_F) = max(1, √n_ψ)/f₀; when γ_𝒢 is not given it follows γ_ℋ.
    static LsDremGains make(double gamma_H, Vector gamma_i, double f0, double chi0, int n_psi,
                            std::optional<double> k = std::nullopt, std::optional<double> gamma_G = std::nullopt);
};

enum class EstimatorMode { Full, LsOnly };

struct LsDremState {
    Vector G_hat; // n_ψ
    Matrix F;     // n_ψ × n_ψ
    double zeta = 1.0;
    Vector theta_hat; // n_θ
    double t = 0.0;
    long steps = 0;
};

struct DremSignals {
    double Delta = 0.0;
    Vector Yvec;
};

LsDremState lsdrem_init(const Vector& G0, const Vector& theta0, const LsDremGains& gains, double t0 = 0.0);

double forgetting_rate(const Matrix& F, const LsDremGains& gains);

DremSignals drem_mix(const LsDremState& st, const Vector& G0, double f0);

// One RK4 step with (𝒴, ψ) held over the step. In LsOnly mode the DREM stage is
// bypassed and θ̂ is read from the leading entries of 𝒢̂.
// Throws EstimatorError when F loses positive definiteness (checked every
// kPdCheckInterval steps) and DivergenceError when a signal leaves the bound.
LsDremState lsdrem_step(const LsDremState& st, const LreSample& sample, const LsDremGains& gains, const Vector& G0,
                        double dt, EstimatorMode mode = EstimatorMode::Full);

inline constexpr long kPdCheckInterval = 100;

// Explicit Euler step of  dθ̂/dt = γ ψᵀ(𝒴 − ψθ̂).
Vector gradient_baseline_step(const Vector& theta_hat, const LreSample& sample, double gamma, double dt);

} // namespace gpebo
