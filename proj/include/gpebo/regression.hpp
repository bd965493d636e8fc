#pragma once

#include <string>
#include <vector>

#include "gpebo/core_math.hpp"
#include "gpebo/gpebo.hpp"

namespace gpebo {

// One entry of 𝒢(θ): a sum of monomials  Σ c·Π θ_i^{e_i}.
struct GEntry {
    struct Term {
        double coef = 1.0;
        std::vector<int> exponents; // length n_θ
    };
    std::string name; // column header, e.g. "th1", "th3*th4"
    std::vector<Term> terms;

    double eval(const Vector& theta) const;
};

// Ordered descriptor of 𝒢: ℝ^{n_θ} → ℝ^{n_ψ}. The first `n_linear` entries are
// θ_1 … θ_{n_linear} themselves; those are the parameters the estimator reports.
class MonomialMap {
public:
    MonomialMap() = default;
    MonomialMap(int n_theta, std::vector<GEntry> entries);

    // 𝒢(θ) = θ.
    static MonomialMap identity(int n);
    // (θ, θ1², θ2², θ3², θ4², θ1θ2, θ1θ3, θ1θ4, θ2θ3, θ2θ4, θ3θ4).
    static MonomialMap maglev();
    // (θ1, θ2, θ1² + θ2²).
    static MonomialMap pmsm();

    int n_theta() const { return n_theta_; }
    int n_psi() const { return static_cast<int>(entries_.size()); }
    int n_linear() const { return n_linear_; }
    const std::vector<GEntry>& entries() const { return entries_; }
    std::vector<std::string> names() const;

    Vector eval(const Vector& theta) const;

private:
    int n_theta_ = 0;
    int n_linear_ = 0;
    std::vector<GEntry> entries_;
};

// Separable regression  𝒴 = ψ·𝒢(θ).
struct SeparableNlpre {
    LreSample sample; // Y: p, psi: p × n_ψ
    MonomialMap gmap;

    double residual(const Vector& theta) const { return max_abs(sample.Y - sample.psi * gmap.eval(theta)); }
};

// ψ₀(Φ₁, Φ₂) such that Φ₁ᵀθθᵀΦ₂ = ψ₀ᵀ𝒢₀(θ), in the fixed monomial order
// θ1², θ2², θ3², θ4², θ1θ2, θ1θ3, θ1θ4, θ2θ3, θ2θ4, θ3θ4.
Vector quad_expand(const Vector& phi1, const Vector& phi2);

// Maglev output y = (1/k)(1 − x2) x1 with x = D(ξ − Φθ):
//   𝒴 = k y − ξ1 + ξ1 ξ2,  ψ = [ ((ξ2 − 1)Φ₁ + ξ1Φ₂)ᵀ | −ψ₀ᵀ ]   (Φᵢ = i-th row of Φ).
SeparableNlpre maglev_nlpre(double y, const Vector& xi, const Matrix& Phi, double k, double t = 0.0);

// PMSM flux circle (L y_j − x_j)² summed = λ_m², x_j = ξ_j − θ_j:
//   𝒴 = Σ (L y_j − ξ_j)² − λ_m²,  ψ = [ 2(ξ1 − L y1), 2(ξ2 − L y2), −1 ].
SeparableNlpre pmsm_nlpre(const Vector& y, const Vector& xi, double inductance, double lambda_m, double t = 0.0);

// Rotor angle from the flux estimate: atan2(L y2 − x̂2, L y1 − x̂1) / n_p, wrapped to [0, 2π/n_p).
double pmsm_angle(const Vector& y, const Vector& flux_hat, double inductance, int pole_pairs);

} // namespace gpebo
