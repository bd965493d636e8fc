#include "gpebo/scenario.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "gpebo/estimator.hpp"
#include "gpebo/gpebo.hpp"
#include "gpebo/regression.hpp"

namespace gpebo {

namespace {

using json = nlohmann::json;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Vector json_vector(const json& j, const std::string& key) {
    if (j.is_number()) {
        return Vector::Constant(1, j.get<double>());
    }
    if (!j.is_array()) {
        throw ValidationError("scenario: '" + key + "' must be a number or an array of numbers");
    }
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) {
            throw ValidationError("scenario: '" + key + "' must contain only numbers");
        }
        v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
    }
    if (!v.allFinite()) {
        throw ValidationError("scenario: '" + key + "' must be finite");
    }
    return v;
}

double json_number(const json& j, const std::string& key) {
    if (!j.is_number()) {
        throw ValidationError("scenario: '" + key + "' must be a number");
    }
    return j.get<double>();
}

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!allowed.count(it.key())) {
            throw ValidationError("scenario: unknown key '" + it.key() + "' in " + where);
        }
    }
}

// A length-1 vector broadcasts to n entries.
Vector broadcast(const Vector& v, Eigen::Index n, const std::string& what) {
    if (v.size() == n) {
        return v;
    }
    if (v.size() == 1) {
        return Vector::Constant(n, v(0));
    }
    throw ValidationError("scenario: '" + what + "' needs " + std::to_string(n) + " entries, got " +
                          std::to_string(v.size()));
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

Scenario parse_scenario(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("scenario: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) {
        throw ValidationError("scenario: top level must be an object");
    }
    reject_unknown(j,
                   {"benchmark", "params", "x0", "xi0", "dt", "horizon", "estimator", "dither", "seed", "output_every",
                    "threshold", "plot", "out", "true_state_feedback"},
                   "scenario");
    Scenario sc;
    if (!j.contains("benchmark") || !j["benchmark"].is_string()) {
        throw ValidationError("scenario: 'benchmark' (string) is required");
    }
    sc.benchmark = j["benchmark"].get<std::string>();
    if (j.contains("params")) {
        if (!j["params"].is_object()) {
            throw ValidationError("scenario: 'params' must be an object");
        }
        for (auto it = j["params"].begin(); it != j["params"].end(); ++it) {
            sc.params[it.key()] = json_number(it.value(), "params." + it.key());
        }
    }
    if (j.contains("x0")) sc.x0 = json_vector(j["x0"], "x0");
    if (j.contains("xi0")) sc.xi0 = json_vector(j["xi0"], "xi0");
    if (j.contains("dt")) sc.dt = json_number(j["dt"], "dt");
    if (j.contains("horizon")) sc.horizon = json_number(j["horizon"], "horizon");
    if (j.contains("estimator")) {
        const json& e = j["estimator"];
        if (!e.is_object()) {
            throw ValidationError("scenario: 'estimator' must be an object");
        }
        reject_unknown(e,
                       {"mode", "gamma_H", "gamma_G", "chi0", "f0", "k", "gamma_i", "G0", "theta0", "gradient_gamma"},
                       "estimator");
        if (e.contains("mode")) {
            if (!e["mode"].is_string()) throw ValidationError("scenario: 'estimator.mode' must be a string");
            sc.mode = e["mode"].get<std::string>();
            estimator_kind_from_string(*sc.mode);
        }
        if (e.contains("gamma_H")) sc.gamma_H = json_number(e["gamma_H"], "gamma_H");
        if (e.contains("gamma_G")) sc.gamma_G = json_number(e["gamma_G"], "gamma_G");
        if (e.contains("chi0")) sc.chi0 = json_number(e["chi0"], "chi0");
        if (e.contains("f0")) sc.f0 = json_number(e["f0"], "f0");
        if (e.contains("k")) sc.k = json_number(e["k"], "k");
        if (e.contains("gradient_gamma")) sc.gradient_gamma = json_number(e["gradient_gamma"], "gradient_gamma");
        if (e.contains("gamma_i")) sc.gamma_i = json_vector(e["gamma_i"], "gamma_i");
        if (e.contains("G0")) sc.G0 = json_vector(e["G0"], "G0");
        if (e.contains("theta0")) sc.theta0 = json_vector(e["theta0"], "theta0");
    }
    if (j.contains("dither")) {
        const json& d = j["dither"];
        reject_unknown(d, {"amplitude", "components"}, "dither");
        Dither dt;
        if (d.contains("amplitude")) dt.amplitude = json_number(d["amplitude"], "dither.amplitude");
        if (d.contains("components")) dt.components = static_cast<int>(json_number(d["components"], "dither.components"));
        if (dt.amplitude < 0.0 || dt.components < 0) {
            throw ValidationError("scenario: dither amplitude and components must be non-negative");
        }
        sc.dither = dt;
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer()) {
            throw ValidationError("scenario: 'seed' must be a non-negative integer");
        }
        sc.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("output_every")) sc.output_every = static_cast<int>(json_number(j["output_every"], "output_every"));
    if (j.contains("threshold")) sc.threshold = json_number(j["threshold"], "threshold");
    if (j.contains("plot")) {
        if (!j["plot"].is_boolean()) throw ValidationError("scenario: 'plot' must be a boolean");
        sc.plot = j["plot"].get<bool>();
    }
    if (j.contains("true_state_feedback")) {
        if (!j["true_state_feedback"].is_boolean()) {
            throw ValidationError("scenario: 'true_state_feedback' must be a boolean");
        }
        sc.true_state_feedback = j["true_state_feedback"].get<bool>();
    }
    if (j.contains("out")) {
        if (!j["out"].is_string()) throw ValidationError("scenario: 'out' must be a string");
        sc.out_dir = j["out"].get<std::string>();
    }
    return sc;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open scenario file '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

// ---------------------------------------------------------------------------

double settling_time(const std::vector<double>& t, const std::vector<double>& err, double thr) {
    if (t.empty() || !(err.back() < thr)) {
        return kNaN;
    }
    std::size_t i = err.size();
    while (i > 0 && err[i - 1] < thr) {
        --i;
    }
    return t[i == err.size() ? err.size() - 1 : i];
}

ExpRateFit exponential_rate_check(const std::vector<double>& t, const std::vector<double>& err, double floor) {
    ExpRateFit fit;
    if (t.size() < 3 || !(err.front() > 0.0)) {
        return fit;
    }
    const double e0 = err.front();
    // Window: from the end of the transient (error first below 10% of its
    // initial value) until it reaches the numerical floor.
    std::size_t a = 0;
    while (a < err.size() && err[a] > 0.1 * e0) ++a;
    std::size_t b = a;
    while (b < err.size() && err[b] > floor * e0) ++b;
    if (b - a < 3) {
        return fit;
    }
    double st = 0, sl = 0, stt = 0, stl = 0;
    const double n = static_cast<double>(b - a);
    for (std::size_t i = a; i < b; ++i) {
        const double l = std::log(err[i]);
        st += t[i];
        sl += l;
        stt += t[i] * t[i];
        stl += t[i] * l;
    }
    const double den = n * stt - st * st;
    if (den <= 0.0) {
        return fit;
    }
    fit.slope = (n * stl - st * sl) / den;
    fit.upper_intercept = -std::numeric_limits<double>::infinity();
    for (std::size_t i = a; i < b; ++i) {
        fit.upper_intercept = std::max(fit.upper_intercept, std::log(err[i]) - fit.slope * t[i]);
    }
    fit.t_start = t[a];
    fit.t_end = t[b - 1];
    // The envelope must itself decay below the error at the start of the window.
    fit.ok = fit.slope < 0.0 && fit.upper_intercept + fit.slope * fit.t_end < std::log(err[a]);
    return fit;
}

// ---------------------------------------------------------------------------

namespace {

struct Resolved {
    explicit Resolved(Benchmark bb) : b(std::move(bb)) {}
    Benchmark b;
    Vector x0, xi0;
    double dt = 0.0;
    long steps = 0;
    EstimatorConfig est;
    std::optional<LsDremGains> gains;
};

Resolved resolve(const Scenario& sc) {
    Resolved r(make_benchmark(sc.benchmark, sc.params));
    const Benchmark& b = r.b;
    r.x0 = broadcast(sc.x0.value_or(b.defaults.x0), b.system.n, "x0");
    r.xi0 = broadcast(sc.xi0.value_or(b.defaults.xi0), b.nz(), "xi0");
    r.dt = sc.dt.value_or(b.defaults.dt);
    const double horizon = sc.horizon.value_or(b.defaults.horizon);
    if (!(r.dt > 0.0) || !std::isfinite(r.dt)) {
        throw ValidationError("scenario: dt must be positive");
    }
    if (!(horizon >= r.dt) || !std::isfinite(horizon)) {
        throw ValidationError("scenario: horizon must be at least dt");
    }
    r.steps = std::lround(horizon / r.dt);
    if (sc.output_every < 1) {
        throw ValidationError("scenario: output_every must be >= 1");
    }
    if (!(sc.threshold > 0.0)) {
        throw ValidationError("scenario: threshold must be positive");
    }

    EstimatorConfig& e = r.est;
    e = b.defaults.estimator;
    if (sc.mode) e.kind = estimator_kind_from_string(*sc.mode);
    if (sc.gamma_H) e.gamma_H = *sc.gamma_H;
    if (sc.gamma_G) e.gamma_G = *sc.gamma_G;
    if (sc.chi0) e.chi0 = *sc.chi0;
    if (sc.f0) e.f0 = *sc.f0;
    if (sc.k) e.k = *sc.k;
    if (sc.gradient_gamma) e.gradient_gamma = *sc.gradient_gamma;
    const int n_psi = b.gmap.n_psi();
    const int n_lin = b.gmap.n_linear();
    e.gamma_i = broadcast(sc.gamma_i.value_or(e.gamma_i), n_lin, "gamma_i");
    e.G0 = broadcast(sc.G0.value_or(e.G0), n_psi, "G0");
    e.theta0 = broadcast(sc.theta0.value_or(e.theta0), n_lin, "theta0");
    if (e.kind == EstimatorKind::Gradient) {
        if (!(e.gradient_gamma > 0.0)) {
            throw ValidationError("scenario: gradient_gamma must be positive");
        }
    } else {
        r.gains = LsDremGains::make(e.gamma_H, e.gamma_i, e.f0, e.chi0, n_psi, e.k, e.gamma_G);
    }
    return r;
}

struct DitherSignal {
    struct Comp {
        double a, w, ph;
    };
    std::vector<std::vector<Comp>> channels;

    double operator()(std::size_t c, double t) const {
        double v = 0.0;
        for (const auto& k : channels[c]) v += k.a * std::sin(k.w * t + k.ph);
        return v;
    }
};

DitherSignal make_dither(const std::optional<Dither>& d, int m, std::uint64_t seed) {
    DitherSignal s;
    s.channels.resize(static_cast<std::size_t>(m));
    if (!d || d->amplitude == 0.0) {
        return s;
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (auto& ch : s.channels) {
        for (int k = 0; k < d->components; ++k) {
            const double a = d->amplitude * unit(rng);
            const double w = 0.5 + 4.5 * unit(rng);
            const double ph = 2.0 * std::numbers::pi * unit(rng);
            ch.push_back({a, w, ph});
        }
    }
    return s;
}

double wrap_angle(double d, double period) {
    double r = std::fmod(d, period);
    if (r >= 0.5 * period) r -= period;
    if (r < -0.5 * period) r += period;
    return r;
}

double finite_norm(const Vector& v) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::isfinite(v(i))) s += v(i) * v(i);
    }
    return std::sqrt(s);
}

} // namespace

RunResult run_scenario(const Scenario& sc) {
    const Resolved rs = resolve(sc);
    const Benchmark& b = rs.b;
    const NonlinearSystem& sys = b.system;
    const Immersion& imm = b.immersion;
    const Selector sel(imm);
    const EstimatorConfig& ec = rs.est;
    const int n_lin = b.gmap.n_linear();
    const double dt = rs.dt;

    RunResult res;
    res.monomials = b.gmap.names();
    res.theta_true = rs.xi0 - lift(imm, rs.x0);
    const Vector theta_est_true = res.theta_true.head(n_lin);
    const Vector G_true = b.gmap.eval(theta_est_true);

    const DitherSignal dither = make_dither(sc.dither, sys.m, sc.seed);

    auto regress = [&](const Vector& y, const Vector& u, const GpeboState& st) -> LreSample {
        switch (b.readout) {
        case ReadoutKind::Linear: return build_lre(b.C, y, u, st, sel);
        case ReadoutKind::Maglev: return maglev_nlpre(y(0), st.xi, st.Phi, b.param("k"), st.t).sample;
        case ReadoutKind::Pmsm: return pmsm_nlpre(y, st.xi, b.param("L"), b.param("lambda_m"), st.t).sample;
        }
        throw ValidationError("internal: unknown readout");
    };

    // State estimate from θ̂; the PMSM reconstructs flux and rotor angle only.
    auto estimate_state = [&](const Vector& y, const GpeboState& st, const Vector& theta_hat) -> Vector {
        if (b.readout == ReadoutKind::Pmsm) {
            Vector xh = Vector::Constant(sys.n, kNaN);
            xh.head(2) = st.xi.head(2) - theta_hat.head(2);
            try {
                xh(2) = pmsm_angle(y, xh.head(2), b.param("L"), static_cast<int>(b.param("n_p")));
            } catch (const ValidationError&) {
            }
            return xh;
        }
        return parameterize_state(st.xi, st.Phi, theta_hat, sel);
    };

    auto state_error = [&](const Vector& xh, const Vector& x) -> Vector {
        Vector e = xh - x;
        if (b.readout == ReadoutKind::Pmsm) {
            e(2) = wrap_angle(e(2), 2.0 * std::numbers::pi / b.param("n_p"));
        }
        return e;
    };

    Vector x = rs.x0;
    GpeboState st = GpeboState::initial(rs.xi0);
    Vector u_prev = Vector::Zero(sys.m);

    const bool ls = ec.kind != EstimatorKind::Gradient;
    const EstimatorMode mode = ec.kind == EstimatorKind::LsOnly ? EstimatorMode::LsOnly : EstimatorMode::Full;
    LsDremState est;
    Vector g_hat = ec.G0; // gradient mode
    if (ls) {
        est = lsdrem_init(ec.G0, mode == EstimatorMode::LsOnly ? Vector(ec.G0.head(n_lin)) : ec.theta0, *rs.gains);
    }
    auto theta_hat_now = [&]() -> Vector { return ls ? est.theta_hat : Vector(g_hat.head(n_lin)); };
    // θ̂ padded to n_z for the state parameterization (PMSM uses only its first two).
    auto theta_full = [&](const Vector& th) {
        Vector f = Vector::Zero(b.nz());
        f.head(th.size()) = th;
        return f;
    };

    RunSummary& sum = res.summary;
    sum.benchmark = b.id;
    sum.threshold = sc.threshold;

    for (long k = 0; k <= rs.steps; ++k) {
        const double t = static_cast<double>(k) * dt;
        try {
            const Vector y = readout(sys, x, u_prev);
            LreSample sample = regress(y, u_prev, st);
            sample.t = t;
            const Vector th = theta_hat_now();
            const Vector xh = estimate_state(y, st, theta_full(th));

            Vector u;
            if (k < rs.steps) {
                u = b.controller(t, y, sc.true_state_feedback ? x : xh);
                for (Eigen::Index c = 0; c < u.size(); ++c) u(c) += dither(static_cast<std::size_t>(c), t);
                if (!u.allFinite()) {
                    throw DivergenceError("non-finite control input", t);
                }
            }

            if (k % sc.output_every == 0 || k == rs.steps) {
                TraceRow row;
                row.t = t;
                row.u = k < rs.steps ? u : u_prev;
                row.x = x;
                row.x_hat = xh;
                row.x_tilde = state_error(xh, x);
                row.ident_err = max_abs(lift(imm, x) - (st.xi - st.Phi * res.theta_true));
                row.theta_hat = th;
                row.theta_tilde = th - theta_est_true;
                if (ls) {
                    const DremSignals ds = drem_mix(est, ec.G0, rs.gains->f0);
                    row.Delta = ds.Delta;
                    row.normF = est.F.norm();
                    row.zeta = est.zeta;
                    row.chi = forgetting_rate(est.F, *rs.gains);
                    row.mix_err = ds.Yvec - ds.Delta * G_true;
                } else {
                    row.Delta = row.normF = row.zeta = row.chi = kNaN;
                    row.mix_err = Vector::Constant(G_true.size(), kNaN);
                }
                row.reg_residual = max_abs(sample.Y - sample.psi * G_true);
                row.sample = sample;
                res.trace.push_back(std::move(row));
            }
            if (k == rs.steps) {
                break;
            }

            auto [x_next, st_next] = cosim_step(sys, imm, x, st, u, dt);
            x = std::move(x_next);
            st = std::move(st_next);
            st.t = static_cast<double>(k + 1) * dt;
            if (ls) {
                est = lsdrem_step(est, sample, *rs.gains, ec.G0, dt, mode);
                est.t = st.t;
            } else {
                g_hat = gradient_baseline_step(g_hat, sample, ec.gradient_gamma, dt);
                if (!g_hat.allFinite() || max_abs(g_hat) > kDivergenceBound) {
                    throw DivergenceError("estimator divergence", st.t);
                }
            }
            u_prev = u;
        } catch (const DivergenceError& e) {
            sum.exit_code = 3;
            sum.diverged = true;
            sum.failure = e.what();
            sum.failure_time = e.time();
            break;
        } catch (const EstimatorError& e) {
            sum.exit_code = 4;
            sum.failure = e.what();
            sum.failure_time = e.time();
            break;
        }
    }

    // Summary metrics, computed from the emitted rows.
    std::vector<double> ts, eth, ex;
    std::vector<LreSample> samples;
    for (const auto& row : res.trace) {
        ts.push_back(row.t);
        eth.push_back(row.theta_tilde.norm());
        ex.push_back(finite_norm(row.x_tilde));
        samples.push_back(row.sample);
        sum.max_ident_err = std::max(sum.max_ident_err, row.ident_err);
        sum.max_reg_residual = std::max(sum.max_reg_residual, row.reg_residual);
        for (Eigen::Index i = 0; i < row.mix_err.size(); ++i) {
            if (std::isfinite(row.mix_err(i))) {
                sum.max_mix_err = std::max(sum.max_mix_err, std::abs(row.mix_err(i)) / (1.0 + std::abs(G_true(i))));
            }
        }
    }
    if (!ts.empty()) {
        sum.final_time = ts.back();
        sum.theta_err0 = eth.front();
        sum.final_theta_err = eth.back();
        sum.final_x_err = ex.back();
        sum.t_theta = settling_time(ts, eth, sc.threshold);
        sum.t_x = settling_time(ts, ex, sc.threshold);
    }
    if (samples.size() >= 2) {
        const Matrix g = excitation_grammian(samples);
        const Eigen::SelfAdjointEigenSolver<Matrix> es(g, Eigen::EigenvaluesOnly);
        sum.grammian_min_eig = es.eigenvalues().minCoeff();
        sum.grammian_max_eig = es.eigenvalues().maxCoeff();
        sum.ie_grammian = grammian_exciting(g, kGrammianRelDelta);
        sum.ie_rank = rank_identifiable(samples, b.gmap.n_psi(), kRankTol);
    }

    if (!sc.out_dir.empty()) {
        write_outputs(res, sc.out_dir, sc.plot);
    }
    return res;
}

std::string RunSummary::to_text() const {
    std::ostringstream o;
    auto line = [&](const char* k, const std::string& v) { o << k << " = " << v << "\n"; };
    auto b = [](bool v) { return std::string(v ? "true" : "false"); };
    line("benchmark", benchmark);
    line("exit_code", std::to_string(exit_code));
    line("diverged", b(diverged));
    line("failure", failure.empty() ? "none" : failure);
    line("failure_time", fmt(failure_time));
    line("final_time", fmt(final_time));
    line("threshold", fmt(threshold));
    line("initial_theta_error", fmt(theta_err0));
    line("final_theta_error", fmt(final_theta_err));
    line("final_state_error", fmt(final_x_err));
    line("time_to_theta_threshold", fmt(t_theta));
    line("time_to_state_threshold", fmt(t_x));
    line("grammian_min_eig", fmt(grammian_min_eig));
    line("grammian_max_eig", fmt(grammian_max_eig));
    line("ie_grammian", b(ie_grammian));
    line("ie_rank", b(ie_rank));
    line("max_parameterization_error", fmt(max_ident_err));
    line("max_regression_residual", fmt(max_reg_residual));
    line("max_mixing_error", fmt(max_mix_err));
    return o.str();
}

void write_outputs(const RunResult& r, const std::string& dir, bool plot) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    auto open = [&](const char* name) {
        std::ofstream f(fs::path(dir) / name);
        if (!f) {
            throw ValidationError("cannot write " + (fs::path(dir) / name).string());
        }
        return f;
    };
    auto cols = [](std::ostream& o, const char* prefix, Eigen::Index n) {
        for (Eigen::Index i = 0; i < n; ++i) o << "," << prefix << (i + 1);
    };
    auto vals = [](std::ostream& o, const Vector& v) {
        for (Eigen::Index i = 0; i < v.size(); ++i) o << "," << fmt(v(i));
    };
    if (r.trace.empty()) {
        return;
    }
    const TraceRow& first = r.trace.front();

    {
        auto f = open("states.csv");
        f << "t";
        cols(f, "u", first.u.size());
        cols(f, "x", first.x.size());
        cols(f, "xhat", first.x.size());
        cols(f, "xtilde", first.x.size());
        f << ",ident_err\n";
        for (const auto& row : r.trace) {
            f << fmt(row.t);
            vals(f, row.u);
            vals(f, row.x);
            vals(f, row.x_hat);
            vals(f, row.x_tilde);
            f << "," << fmt(row.ident_err) << "\n";
        }
    }
    {
        auto f = open("estimator.csv");
        f << "t";
        cols(f, "thhat", first.theta_hat.size());
        cols(f, "thtilde", first.theta_hat.size());
        f << ",Delta,normF,zeta,chi";
        cols(f, "mix", first.mix_err.size());
        f << "\n";
        for (const auto& row : r.trace) {
            f << fmt(row.t);
            vals(f, row.theta_hat);
            vals(f, row.theta_tilde);
            f << "," << fmt(row.Delta) << "," << fmt(row.normF) << "," << fmt(row.zeta) << "," << fmt(row.chi);
            vals(f, row.mix_err);
            f << "\n";
        }
    }
    {
        auto f = open("regressor.csv");
        f << "t,row,Y";
        for (const auto& name : r.monomials) f << "," << name;
        f << ",residual\n";
        for (const auto& row : r.trace) {
            for (Eigen::Index i = 0; i < row.sample.psi.rows(); ++i) {
                f << fmt(row.t) << "," << i + 1 << "," << fmt(row.sample.Y(i));
                vals(f, row.sample.psi.row(i).transpose());
                f << "," << fmt(row.reg_residual) << "\n";
            }
        }
    }
    {
        auto f = open("summary");
        f << r.summary.to_text();
    }
    if (plot) {
        auto f = open("plot.gp");
        const auto nth = first.theta_hat.size();
        const auto nx = first.x.size();
        const auto nu = first.u.size();
        f << "# gnuplot -persist plot.gp\n"
          << "set datafile separator ','\nset key autotitle columnhead\nset grid\n"
          << "set multiplot layout 3,1\n"
          << "set title 'state'\nplot for [i=" << 2 + nu << ":" << 1 + nu + nx << "] 'states.csv' using 1:i with lines\n"
          << "set title 'parameter estimation error'\nplot for [i=" << 2 + nth << ":" << 1 + 2 * nth
          << "] 'estimator.csv' using 1:i with lines\n"
          << "set title 'state estimation error'\nplot for [i=" << 2 + nu + 2 * nx << ":" << 1 + nu + 3 * nx
          << "] 'states.csv' using 1:i with lines\n"
          << "unset multiplot\n";
    }
}

// ---------------------------------------------------------------------------

std::string ImmersionReport::to_text() const {
    std::ostringstream o;
    o << "benchmark = " << benchmark << "\n"
      << "samples = " << samples << "\n"
      << "max_r1 = " << fmt(max_r1) << "\n"
      << "max_r2 = " << fmt(max_r2) << "\n"
      << "max_total = " << fmt(max_total) << "\n"
      << "worst = " << (worst_location.empty() ? "none" : worst_location) << "\n"
      << "grad_phi_rel_err = " << fmt(grad_phi_rel_err) << "\n"
      << "result = " << (pass ? "pass" : "fail") << "\n";
    return o.str();
}

ImmersionReport verify_immersion(const Benchmark& b, const Immersion& imm, int samples, std::uint64_t seed) {
    if (samples < 1) {
        throw ValidationError("verify: need at least one sample");
    }
    ImmersionReport rep;
    rep.benchmark = b.id;
    rep.samples = samples;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto draw = [&](const Vector& lo, const Vector& hi) {
        Vector v(lo.size());
        for (Eigen::Index i = 0; i < lo.size(); ++i) v(i) = lo(i) + (hi(i) - lo(i)) * unit(rng);
        return v;
    };
    double worst_entry = -1.0;
    for (int s = 0; s < samples; ++s) {
        const Vector x = draw(b.box.x_lo, b.box.x_hi);
        const Vector u = draw(b.box.u_lo, b.box.u_hi);
        const MatchingResidual r = matching_residual(b.system, imm, x, u);
        rep.max_r1 = std::max(rep.max_r1, max_abs(r.r1));
        rep.max_r2 = std::max(rep.max_r2, max_abs(r.r2));
        rep.max_total = std::max(rep.max_total, r.max_abs_sum());
        for (Eigen::Index i = 0; i < r.r1.size(); ++i) {
            if (std::abs(r.r1(i)) > worst_entry) {
                worst_entry = std::abs(r.r1(i));
                rep.worst_location = "r1[" + std::to_string(i) + "]";
            }
        }
        for (Eigen::Index i = 0; i < r.r2.size(); ++i) {
            if (std::abs(r.r2(i)) > worst_entry) {
                worst_entry = std::abs(r.r2(i));
                rep.worst_location = "r2[" + std::to_string(i) + "]";
            }
        }
        if (imm.ell > 0) {
            const Matrix an = imm.grad_phi(x);
            const Matrix fd = finite_difference_grad_phi(imm, x);
            rep.grad_phi_rel_err = std::max(rep.grad_phi_rel_err, max_abs(an - fd) / std::max(1.0, max_abs(an)));
        }
    }
    rep.pass = rep.max_total < kMatchingTol && rep.grad_phi_rel_err < 1e-6;
    return rep;
}

ImmersionReport verify_immersion(const std::string& id, int samples, std::uint64_t seed) {
    const Benchmark b = make_benchmark(id);
    return verify_immersion(b, b.immersion, samples, seed);
}

Immersion corrupted_immersion(const Benchmark& b) {
    if (b.id == "remark4-oscillator") {
        return remark4_printed_immersion();
    }
    Immersion imm = b.immersion;
    if (imm.ell > 0) {
        const int n = imm.n;
        const int ell = imm.ell;
        auto w = imm.W;
        imm.W = [w, n, ell](const Vector& y, const Vector& u) {
            Matrix m = w(y, u);
            m.block(0, n, n, ell).setZero();
            return m;
        };
    } else {
        auto l = imm.L;
        imm.L = [l](const Vector& y, const Vector& u) {
            Vector v = l(y, u);
            v(0) += 1.0;
            return v;
        };
    }
    return imm;
}

} // namespace gpebo
