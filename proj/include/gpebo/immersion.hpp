#pragma once

#include <functional>

#include "gpebo/core_math.hpp"
#include "gpebo/system.hpp"

namespace gpebo {

// Algebraic immersion z = (x, φ(x)) with lifted dynamics ż = W(y,u) z + L(y,u).
//
// W is n_z×n_z with the block partition
//     [ W11 (n×n)  W12 (n×ℓ) ]
//     [ W21 (ℓ×n)  W22 (ℓ×ℓ) ]
// and grad_phi returns the ℓ×n Jacobian of φ (∇ᵀφ). For ℓ = 0 the lifted
// state is x itself and phi / grad_phi may be left empty.
struct Immersion {
    int n = 0;
    int ell = 0;
    std::function<Vector(const Vector& x)> phi;
    std::function<Matrix(const Vector& x)> grad_phi;
    std::function<Matrix(const Vector& y, const Vector& u)> W;
    std::function<Vector(const Vector& y, const Vector& u)> L;

    int nz() const { return n + ell; }
};

// D = [I_n | 0_{n×ℓ}].
struct Selector {
    Matrix D;

    explicit Selector(const Immersion& imm);
    Vector select(const Vector& z) const { return D * z; }
};

struct MatchingResidual {
    Vector r1; // length n
    Vector r2; // length ℓ

    double max_abs_sum() const;
};

Vector lift(const Immersion& imm, const Vector& x);

Matrix eval_W(const Immersion& imm, const Vector& y, const Vector& u);
Vector eval_L(const Immersion& imm, const Vector& y, const Vector& u);

// r1 = f − W11 x − W12 φ − L1,  r2 = ∇ᵀφ f − W21 x − W22 φ − L2, with y = h(x,u).
MatchingResidual matching_residual(const NonlinearSystem& sys, const Immersion& imm, const Vector& x, const Vector& u);

// W(y,u) z + L(y,u).
Vector affine_field(const Immersion& imm, const Vector& y, const Vector& u, const Vector& z);

// Central-difference Jacobian of φ, used to cross-check grad_phi.
Matrix finite_difference_grad_phi(const Immersion& imm, const Vector& x, double h = 1e-6);

} // namespace gpebo
