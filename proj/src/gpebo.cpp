#include "gpebo/gpebo.hpp"

#include <Eigen/Eigenvalues>

namespace gpebo {

GpeboState GpeboState::initial(const Vector& xi0, double t0) {
    const auto nz = xi0.size();
    return GpeboState{xi0, Matrix::Identity(nz, nz), t0};
}

void check_observer_bound(const GpeboState& st, double bound) {
    if (!st.xi.allFinite() || !st.Phi.allFinite() || max_abs(st.xi) > bound || max_abs(st.Phi) > bound) {
        throw DivergenceError("observer divergence", st.t);
    }
}

namespace {

// Packed layout: [ξ (n_z) | vec(Φ) column-major (n_z²)].
Vector pack(const GpeboState& st) {
    const auto nz = st.xi.size();
    Vector s(nz + nz * nz);
    s.head(nz) = st.xi;
    s.tail(nz * nz) = Eigen::Map<const Vector>(st.Phi.data(), nz * nz);
    return s;
}

void unpack(const Vector& s, Eigen::Index offset, Eigen::Index nz, GpeboState& st) {
    st.xi = s.segment(offset, nz);
    st.Phi = Eigen::Map<const Matrix>(s.data() + offset + nz, nz, nz);
}

void extension_field(const Matrix& w, const Vector& l, const Eigen::Ref<const Vector>& s, Eigen::Index nz,
                     Eigen::Ref<Vector> out) {
    const Eigen::Map<const Matrix> phi(s.data() + nz, nz, nz);
    out.head(nz) = w * s.head(nz) + l;
    Eigen::Map<Matrix>(out.data() + nz, nz, nz) = w * phi;
}

} // namespace

GpeboState gpebo_step(const Immersion& imm, const GpeboState& st, const Vector& y, const Vector& u, double dt,
                      double bound) {
    const int nz = imm.nz();
    if (st.xi.size() != nz || st.Phi.rows() != nz || st.Phi.cols() != nz) {
        throw DimensionError("gpebo_step: state dimension mismatch");
    }
    const Matrix w = eval_W(imm, y, u);
    const Vector l = eval_L(imm, y, u);
    auto field = [&](double, const Vector& s) {
        Vector d(s.size());
        extension_field(w, l, s, nz, d);
        return d;
    };
    GpeboState next;
    unpack(rk4_step(field, st.t, pack(st), dt), 0, nz, next);
    next.t = st.t + dt;
    check_observer_bound(next, bound);
    return next;
}

std::pair<Vector, GpeboState> cosim_step(const NonlinearSystem& sys, const Immersion& imm, const Vector& x,
                                         const GpeboState& st, const Vector& u, double dt, double bound) {
    const int n = sys.n;
    const int nz = imm.nz();
    if (x.size() != n || st.xi.size() != nz) {
        throw DimensionError("cosim_step: dimension mismatch");
    }
    Vector s(n + nz + nz * nz);
    s.head(n) = x;
    s.tail(nz + nz * nz) = pack(st);

    auto field = [&](double, const Vector& v) {
        Vector d(v.size());
        const Vector xs = v.head(n);
        const Vector y = readout(sys, xs, u);
        d.head(n) = plant_field(sys, xs, u);
        extension_field(eval_W(imm, y, u), eval_L(imm, y, u), v.tail(nz + nz * nz), nz, d.tail(nz + nz * nz));
        return d;
    };
    const Vector next = rk4_step(field, st.t, s, dt);

    GpeboState out;
    unpack(next, n, nz, out);
    out.t = st.t + dt;
    Vector x_next = next.head(n);
    if (!x_next.allFinite() || max_abs(x_next) > bound) {
        throw DivergenceError("plant divergence", out.t);
    }
    check_observer_bound(out, bound);
    return {std::move(x_next), std::move(out)};
}

Vector parameterize_state(const Vector& xi, const Matrix& Phi, const Vector& theta, const Selector& sel) {
    if (xi.size() != Phi.rows() || Phi.cols() != theta.size() || sel.D.cols() != xi.size()) {
        throw DimensionError("parameterize_state: dimension mismatch");
    }
    return sel.D * (xi - Phi * theta);
}

LreSample build_lre(const std::function<Matrix(const Vector& u)>& C, const Vector& y, const Vector& u,
                    const GpeboState& st, const Selector& sel) {
    const Matrix c_lifted = C(u) * sel.D;
    if (c_lifted.rows() != y.size()) {
        throw DimensionError("build_lre: output matrix does not match y");
    }
    return LreSample{st.t, c_lifted * st.xi - y, c_lifted * st.Phi};
}

Matrix excitation_grammian(std::span<const LreSample> samples) {
    if (samples.size() < 2) {
        throw InsufficientDataError("excitation_grammian: need at least two samples");
    }
    const auto np = samples.front().psi.cols();
    Matrix g = Matrix::Zero(np, np);
    for (std::size_t k = 1; k < samples.size(); ++k) {
        const double h = samples[k].t - samples[k - 1].t;
        g.noalias() += 0.5 * h * samples[k - 1].psi.transpose() * samples[k - 1].psi;
        g.noalias() += 0.5 * h * samples[k].psi.transpose() * samples[k].psi;
    }
    return 0.5 * (g + g.transpose());
}

double min_eigenvalue(const Matrix& sym) {
    return Eigen::SelfAdjointEigenSolver<Matrix>(sym, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
}

bool grammian_exciting(const Matrix& grammian, double delta_rel) {
    const Eigen::SelfAdjointEigenSolver<Matrix> es(grammian, Eigen::EigenvaluesOnly);
    const double lmax = es.eigenvalues().maxCoeff();
    return lmax > 0.0 && es.eigenvalues().minCoeff() > delta_rel * lmax;
}

bool rank_identifiable(std::span<const LreSample> samples, int n, double tol) {
    if (samples.empty()) {
        return false;
    }
    Eigen::Index rows = 0;
    for (const auto& s : samples) {
        rows += s.psi.rows();
    }
    Matrix stacked(rows, samples.front().psi.cols());
    Eigen::Index r = 0;
    for (const auto& s : samples) {
        stacked.middleRows(r, s.psi.rows()) = s.psi;
        r += s.psi.rows();
    }
    return numerical_rank(stacked, tol) == n;
}

} // namespace gpebo
