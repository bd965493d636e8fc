#pragma once

#include <Eigen/Dense>

#include <cmath>

#include "gpebo/errors.hpp"

namespace gpebo {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Dense matrices in this library never exceed this size (largest lifted state is 7).
inline constexpr int kMaxDim = 16;

inline bool all_finite(const Eigen::Ref<const Matrix>& a) { return a.allFinite(); }

// Classical fourth-order Runge-Kutta step of  ds/dt = field(t, s).
// Throws DivergenceError if any stage derivative is non-finite.
template <class Field>
Vector rk4_step(Field&& field, double t, const Vector& state, double dt) {
    if (!(dt > 0.0)) {
        throw ValidationError("rk4_step: dt must be positive");
    }
    auto eval = [&](double ts, const Vector& s) {
        Vector d = field(ts, s);
        if (d.size() != s.size()) {
            throw DimensionError("rk4_step: field returned a vector of the wrong length");
        }
        if (!d.allFinite()) {
            throw DivergenceError("non-finite derivative", ts);
        }
        return d;
    };
    const double h2 = 0.5 * dt;
    const Vector k1 = eval(t, state);
    const Vector k2 = eval(t + h2, state + h2 * k1);
    const Vector k3 = eval(t + h2, state + h2 * k2);
    const Vector k4 = eval(t + dt, state + dt * k3);
    return state + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Determinant by LU with partial pivoting.
double determinant(const Matrix& a);

// Adjugate (classical adjoint), adj(A)·A = det(A)·I. Well-conditioned inputs
// go through LU; (near-)singular inputs through an SVD factorization, which
// stays exact for rank-deficient matrices.
Matrix adjugate(const Matrix& a);

// Numerical rank with relative threshold tol·σ_max.
int numerical_rank(const Matrix& a, double tol);

// Largest absolute entry; 0 for empty input.
inline double max_abs(const Eigen::Ref<const Matrix>& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

} // namespace gpebo
