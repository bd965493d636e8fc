#include "gpebo/immersion.hpp"

namespace gpebo {

Selector::Selector(const Immersion& imm) : D(Matrix::Zero(imm.n, imm.nz())) {
    D.leftCols(imm.n).setIdentity();
}

double MatchingResidual::max_abs_sum() const { return max_abs(r1) + max_abs(r2); }

namespace {

Vector eval_phi(const Immersion& imm, const Vector& x) {
    if (imm.ell == 0) {
        return Vector(0);
    }
    Vector v = imm.phi(x);
    if (v.size() != imm.ell) {
        throw DimensionError("immersion: phi returned a vector of the wrong length");
    }
    return v;
}

} // namespace

Vector lift(const Immersion& imm, const Vector& x) {
    if (x.size() != imm.n) {
        throw DimensionError("lift: state dimension mismatch");
    }
    Vector z(imm.nz());
    z.head(imm.n) = x;
    z.tail(imm.ell) = eval_phi(imm, x);
    return z;
}

Matrix eval_W(const Immersion& imm, const Vector& y, const Vector& u) {
    Matrix w = imm.W(y, u);
    if (w.rows() != imm.nz() || w.cols() != imm.nz()) {
        throw DimensionError("immersion: W has the wrong shape");
    }
    return w;
}

Vector eval_L(const Immersion& imm, const Vector& y, const Vector& u) {
    Vector l = imm.L(y, u);
    if (l.size() != imm.nz()) {
        throw DimensionError("immersion: L has the wrong length");
    }
    return l;
}

MatchingResidual matching_residual(const NonlinearSystem& sys, const Immersion& imm, const Vector& x,
                                   const Vector& u) {
    if (sys.n != imm.n) {
        throw DimensionError("matching_residual: system and immersion disagree on n");
    }
    const Vector fx = plant_field(sys, x, u);
    const Vector y = readout(sys, x, u);
    const Vector z = lift(imm, x);
    const Vector rhs = affine_field(imm, y, u, z);

    MatchingResidual r;
    r.r1 = fx - rhs.head(imm.n);
    if (imm.ell > 0) {
        const Matrix g = imm.grad_phi(x);
        if (g.rows() != imm.ell || g.cols() != imm.n) {
            throw DimensionError("immersion: grad_phi has the wrong shape");
        }
        r.r2 = g * fx - rhs.tail(imm.ell);
    } else {
        r.r2 = Vector(0);
    }
    return r;
}

Vector affine_field(const Immersion& imm, const Vector& y, const Vector& u, const Vector& z) {
    if (z.size() != imm.nz()) {
        throw DimensionError("affine_field: lifted state dimension mismatch");
    }
    return eval_W(imm, y, u) * z + eval_L(imm, y, u);
}

Matrix finite_difference_grad_phi(const Immersion& imm, const Vector& x, double h) {
    Matrix j(imm.ell, imm.n);
    for (int c = 0; c < imm.n; ++c) {
        Vector xp = x;
        Vector xm = x;
        const double step = h * std::max(1.0, std::abs(x(c)));
        xp(c) += step;
        xm(c) -= step;
        j.col(c) = (eval_phi(imm, xp) - eval_phi(imm, xm)) / (2.0 * step);
    }
    return j;
}

} // namespace gpebo
