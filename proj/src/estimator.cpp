#include "gpebo/estimator.hpp"

#include <Eigen/Cholesky>

#include <algorithm>

namespace gpebo {

LsDremGains LsDremGains::make(double gamma_H, Vector gamma_i, double f0, double chi0, int n_psi,
                              std::optional<double> k, std::optional<double> gamma_G) {
    LsDremGains g;
    g.gamma_H = gamma_H;
    g.gamma_G = gamma_G.value_or(gamma_H);
    g.gamma_i = std::move(gamma_i);
    g.f0 = f0;
    g.chi0 = chi0;
    g.k = k.value_or(std::max(1.0, std::sqrt(static_cast<double>(n_psi))) / f0);
    if (!(g.gamma_H > 0.0) || !(g.gamma_G > 0.0) || !(g.f0 > 0.0) || !(g.chi0 > 0.0)) {
        throw ValidationError("estimator gains must be strictly positive");
    }
    if ((g.gamma_i.array() <= 0.0).any() || !g.gamma_i.allFinite()) {
        throw ValidationError("per-parameter gains must be strictly positive");
    }
    if (!(g.k >= 1.0 / g.f0)) {
        throw ValidationError("k must satisfy k >= 1/f0");
    }
    return g;
}

LsDremState lsdrem_init(const Vector& G0, const Vector& theta0, const LsDremGains& gains, double t0) {
    if (theta0.size() > G0.size()) {
        throw DimensionError("lsdrem_init: more parameters than regressor entries");
    }
    if (gains.gamma_i.size() != theta0.size()) {
        throw DimensionError("lsdrem_init: need one gain per parameter");
    }
    LsDremState st;
    st.G_hat = G0;
    st.F = Matrix::Identity(G0.size(), G0.size()) / gains.f0;
    st.zeta = 1.0;
    st.theta_hat = theta0;
    st.t = t0;
    return st;
}

double forgetting_rate(const Matrix& F, const LsDremGains& gains) { return gains.chi0 * (1.0 - F.norm() / gains.k); }

namespace {

DremSignals mix(const Vector& g_hat, const Matrix& F, double zeta, const Vector& G0, double f0) {
    const auto n = g_hat.size();
    const Matrix zf = zeta * f0 * F;
    const Matrix m = Matrix::Identity(n, n) - zf;
    DremSignals out;
    out.Delta = determinant(m);
    out.Yvec = adjugate(m) * (g_hat - zf * G0);
    return out;
}

} // namespace

DremSignals drem_mix(const LsDremState& st, const Vector& G0, double f0) {
    if (G0.size() != st.G_hat.size()) {
        throw DimensionError("drem_mix: G0 has the wrong length");
    }
    return mix(st.G_hat, st.F, st.zeta, G0, f0);
}

LsDremState lsdrem_step(const LsDremState& st, const LreSample& sample, const LsDremGains& gains, const Vector& G0,
                        double dt, EstimatorMode mode) {
    const auto np = st.G_hat.size();
    const auto nt = st.theta_hat.size();
    if (sample.psi.cols() != np || sample.psi.rows() != sample.Y.size()) {
        throw DimensionError("lsdrem_step: sample does not match the estimator dimension");
    }
    const bool full = mode == EstimatorMode::Full;

    // Packed layout: [𝒢̂ | vec F | ζ | θ̂].
    const auto off_f = np;
    const auto off_z = np + np * np;
    const auto off_t = off_z + 1;
    Vector s(off_t + nt);
    s.head(np) = st.G_hat;
    s.segment(off_f, np * np) = Eigen::Map<const Vector>(st.F.data(), np * np);
    s(off_z) = st.zeta;
    s.tail(nt) = st.theta_hat;

    const Matrix ptp = sample.psi.transpose() * sample.psi;
    const Vector pty = sample.psi.transpose() * sample.Y;

    auto field = [&](double, const Vector& v) {
        const Vector g_hat = v.head(np);
        const Eigen::Map<const Matrix> F(v.data() + off_f, np, np);
        const double zeta = v(off_z);
        const double chi = forgetting_rate(F, gains);

        Vector d(v.size());
        d.head(np) = gains.gamma_G * (F * (pty - ptp * g_hat));
        Eigen::Map<Matrix>(d.data() + off_f, np, np) = -gains.gamma_H * (F * ptp * F) + chi * F;
        d(off_z) = -chi * zeta;
        if (full && nt > 0) {
            const DremSignals ds = mix(g_hat, F, zeta, G0, gains.f0);
            for (Eigen::Index i = 0; i < nt; ++i) {
                d(off_t + i) = gains.gamma_i(i) * ds.Delta * (ds.Yvec(i) - ds.Delta * v(off_t + i));
            }
        } else {
            d.tail(nt).setZero();
        }
        return d;
    };

    const Vector next = rk4_step(field, st.t, s, dt);

    LsDremState out;
    out.t = st.t + dt;
    out.steps = st.steps + 1;
    out.G_hat = next.head(np);
    out.F = Eigen::Map<const Matrix>(next.data() + off_f, np, np);
    out.F = 0.5 * (out.F + out.F.transpose());
    out.zeta = next(off_z);
    out.theta_hat = full ? Vector(next.tail(nt)) : Vector(out.G_hat.head(nt));

    if (!next.allFinite() || max_abs(next) > kDivergenceBound) {
        throw DivergenceError("estimator divergence", out.t);
    }
    if (out.steps % kPdCheckInterval == 0) {
        const Eigen::LLT<Matrix> llt(out.F);
        if (llt.info() != Eigen::Success) {
            throw EstimatorError("estimator gain matrix F lost positive definiteness", out.t);
        }
    }
    return out;
}

Vector gradient_baseline_step(const Vector& theta_hat, const LreSample& sample, double gamma, double dt) {
    if (!(dt > 0.0)) {
        throw ValidationError("gradient_baseline_step: dt must be positive");
    }
    if (sample.psi.cols() != theta_hat.size()) {
        throw DimensionError("gradient_baseline_step: dimension mismatch");
    }
    return theta_hat + dt * gamma * (sample.psi.transpose() * (sample.Y - sample.psi * theta_hat));
}

} // namespace gpebo
