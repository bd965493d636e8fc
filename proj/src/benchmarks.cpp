#include "gpebo/benchmarks.hpp"

#include <algorithm>
#include <numbers>

namespace gpebo {

const char* to_string(EstimatorKind k) {
    switch (k) {
    case EstimatorKind::Full: return "full";
    case EstimatorKind::LsOnly: return "ls-only";
    case EstimatorKind::Gradient: return "gradient";
    }
    return "?";
}

EstimatorKind estimator_kind_from_string(const std::string& s) {
    if (s == "full") return EstimatorKind::Full;
    if (s == "ls-only") return EstimatorKind::LsOnly;
    if (s == "gradient") return EstimatorKind::Gradient;
    throw ValidationError("unknown estimator mode '" + s + "' (expected full, ls-only or gradient)");
}

double Benchmark::param(const std::string& name) const {
    for (const auto& p : params) {
        if (p.name == name) {
            return p.value;
        }
    }
    throw ValidationError("benchmark '" + id + "' has no parameter '" + name + "'");
}

const std::vector<std::string>& benchmark_ids() {
    static const std::vector<std::string> ids{"levine-marino", "bernard-1", "bernard-2", "remark4-oscillator",
                                              "maglev",        "pmsm",      "prismatic-robot", "robotic-leg"};
    return ids;
}

double maglev_controller(double y, const Vector& x_hat, const MaglevParams& p) {
    return p.R * y - p.Kp * ((x_hat(0) - p.x1_ref()) / p.alpha + (x_hat(1) - p.x2_ref)) -
           (p.alpha / p.m + p.Kp) * x_hat(2);
}

Vector pd_controller(const Vector& q, const Vector& p_hat, const PdParams& p) {
    if (q.size() != 2 || p_hat.size() != 2) {
        throw DimensionError("pd_controller: expects two positions and two momenta");
    }
    const Eigen::Vector2d e = q - p.target;
    return -p.Kp * e - p.Kd * p_hat;
}

namespace {

Vector vec(std::initializer_list<double> v) {
    Vector out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) {
        out(i++) = x;
    }
    return out;
}

// Resolves defaults against user overrides, rejecting unknown keys.
class ParamTable {
public:
    ParamTable(std::string id, std::vector<Param> defaults, const std::map<std::string, double>& overrides)
        : params_(std::move(defaults)) {
        for (const auto& [key, value] : overrides) {
            auto it = std::find_if(params_.begin(), params_.end(), [&](const Param& p) { return p.name == key; });
            if (it == params_.end()) {
                throw ValidationError("unknown parameter '" + key + "' for benchmark '" + id + "'");
            }
            if (!std::isfinite(value)) {
                throw ValidationError("parameter '" + key + "' must be finite");
            }
            it->value = value;
        }
    }

    double operator[](const std::string& name) const {
        for (const auto& p : params_) {
            if (p.name == name) {
                return p.value;
            }
        }
        throw ValidationError("internal: missing parameter " + name);
    }

    void require_positive(std::initializer_list<const char*> names) const {
        for (const char* n : names) {
            if (!((*this)[n] > 0.0)) {
                throw ValidationError(std::string("parameter '") + n + "' must be positive");
            }
        }
    }

    std::vector<Param> params() const { return params_; }

private:
    std::vector<Param> params_;
};

// u(t) = offset + amp·sin(freq·t + phase)
struct Sinusoid {
    double offset, amp, freq, phase;
    double operator()(double t) const { return offset + amp * std::sin(freq * t + phase); }
};

std::vector<Param> sinusoid_params(const std::string& prefix, double offset, double amp, double freq, double phase) {
    return {{prefix + "_offset", offset, "-", "input offset"},
            {prefix + "_amp", amp, "-", "input amplitude"},
            {prefix + "_freq", freq, "rad/s", "input angular frequency"},
            {prefix + "_phase", phase, "rad", "input phase"}};
}

Sinusoid sinusoid_from(const ParamTable& t, const std::string& prefix) {
    return {t[prefix + "_offset"], t[prefix + "_amp"], t[prefix + "_freq"], t[prefix + "_phase"]};
}

template <class... Vs>
std::vector<Param> concat(std::vector<Param> a, Vs&&... rest) {
    (a.insert(a.end(), rest.begin(), rest.end()), ...);
    return a;
}

InputPolicy no_input() {
    return {"open-loop", [](double, const Vector&, const Vector&) { return Vector(0); }};
}

EstimatorConfig lre_estimator(int nz) {
    EstimatorConfig e;
    e.kind = EstimatorKind::Full;
    e.gamma_H = 1.0;
    e.chi0 = 1.0;
    e.f0 = 1.0;
    e.gamma_i = Vector::Constant(nz, 10.0);
    e.G0 = Vector::Zero(nz);
    e.theta0 = Vector::Zero(nz);
    e.k = 100.0;
    return e;
}

// ---------------------------------------------------------------------------

Benchmark levine_marino(const std::map<std::string, double>& ov) {
    const ParamTable t("levine-marino", {{"alpha_lin", -1.0, "1/s", "alpha(x1) = alpha_lin * x1"}}, ov);
    const double a = t["alpha_lin"];

    Benchmark b;
    b.id = "levine-marino";
    b.title = "Chain x1' = x2 + x2^2/2 + alpha(x1), x2' = x2, y = x1";
    b.params = t.params();
    b.system = {2, 0, 1,
                [a](const Vector& x, const Vector&) { return vec({x(1) + 0.5 * x(1) * x(1) + a * x(0), x(1)}); },
                [](const Vector& x, const Vector&) { return vec({x(0)}); }};
    b.immersion.n = 2;
    b.immersion.ell = 1;
    b.immersion.phi = [](const Vector& x) { return vec({0.5 * x(1) * x(1)}); };
    b.immersion.grad_phi = [](const Vector& x) {
        Matrix g(1, 2);
        g << 0.0, x(1);
        return g;
    };
    b.immersion.W = [](const Vector&, const Vector&) {
        Matrix w(3, 3);
        w << 0, 1, 1, //
            0, 1, 0,  //
            0, 0, 2;
        return w;
    };
    b.immersion.L = [a](const Vector& y, const Vector&) { return vec({a * y(0), 0.0, 0.0}); };
    b.controller = no_input();
    b.box = {vec({-2, -2}), vec({2, 2}), Vector(0), Vector(0)};
    b.readout = ReadoutKind::Linear;
    b.C = [](const Vector&) {
        Matrix c(1, 2);
        c << 1, 0;
        return c;
    };
    b.gmap = MonomialMap::identity(3);
    b.defaults.x0 = vec({1.0, 1e-4});
    b.defaults.xi0 = Vector::Zero(3);
    b.defaults.estimator = lre_estimator(3);
    return b;
}

std::vector<Param> bernard_params() {
    return concat(std::vector<Param>{{"drive", 1.0, "1/s", "constant drive of x3' = drive + u"}},
                  sinusoid_params("u", 0.0, 1.0, 1.0, 0.0));
}

Benchmark bernard(bool second, const std::map<std::string, double>& ov) {
    const std::string id = second ? "bernard-2" : "bernard-1";
    auto defaults = bernard_params();
    if (second) {
        // drive + u = sin t keeps x3 bounded so x1'' = x3^3 x1 does not blow up
        for (auto& p : defaults) {
            if (p.name == "u_offset") p.value = -1.0;
        }
    }
    const ParamTable t(id, defaults, ov);
    const double c = t["drive"];
    const Sinusoid u = sinusoid_from(t, "u");

    Benchmark b;
    b.id = id;
    b.title = second ? "Chain x1' = x2, x2' = x3^3 x1, x3' = 1 + u, y = x1"
                     : "Chain x1' = x2, x2' = x3^3, x3' = 1 + u, y = x1";
    b.params = t.params();
    b.system.n = 3;
    b.system.m = 1;
    b.system.p = 1;
    b.system.f = [c, second](const Vector& x, const Vector& in) {
        const double x33 = x(2) * x(2) * x(2);
        return vec({x(1), second ? x33 * x(0) : x33, c + in(0)});
    };
    b.system.h = [](const Vector& x, const Vector&) { return vec({x(0)}); };
    b.immersion.n = 3;
    b.immersion.ell = 2;
    b.immersion.phi = [](const Vector& x) { return vec({x(2) * x(2) * x(2) / 3.0, 0.5 * x(2) * x(2)}); };
    b.immersion.grad_phi = [](const Vector& x) {
        Matrix g = Matrix::Zero(2, 3);
        g(0, 2) = x(2) * x(2);
        g(1, 2) = x(2);
        return g;
    };
    b.immersion.W = [c, second](const Vector& y, const Vector& in) {
        const double d = c + in(0);
        Matrix w = Matrix::Zero(5, 5);
        w(0, 1) = 1.0;
        w(1, 3) = second ? 3.0 * y(0) : 3.0;
        w(3, 4) = 2.0 * d;
        w(4, 2) = d;
        return w;
    };
    b.immersion.L = [c](const Vector&, const Vector& in) { return vec({0, 0, c + in(0), 0, 0}); };
    b.controller = {"open-loop", [u](double time, const Vector&, const Vector&) { return vec({u(time)}); }};
    b.box = {vec({-2, -2, -2}), vec({2, 2, 2}), vec({-2}), vec({2})};
    b.readout = ReadoutKind::Linear;
    b.C = [](const Vector&) {
        Matrix m = Matrix::Zero(1, 3);
        m(0, 0) = 1.0;
        return m;
    };
    b.gmap = MonomialMap::identity(5);
    b.defaults.x0 = second ? vec({0.5, 0.0, -1.0}) : vec({0.0, 0.0, 0.0});
    b.defaults.xi0 = Vector::Ones(5);
    b.defaults.estimator = lre_estimator(5);
    return b;
}

Matrix remark4_W(const Vector& y, bool printed) {
    Matrix w = Matrix::Zero(4, 4);
    w(0, 3) = 1.0;
    w(1, 0) = -1.0;
    w(2, 1) = -2.0 * y(0);
    if (printed) {
        w(3, 1) = -3.0 * y(0);
        w(3, 3) = 1.0;
    } else {
        w(3, 2) = -3.0 * y(0);
    }
    return w;
}

Immersion remark4_immersion(bool printed) {
    Immersion imm;
    imm.n = 2;
    imm.ell = 2;
    imm.phi = [](const Vector& x) { return vec({x(1) * x(1), x(1) * x(1) * x(1)}); };
    imm.grad_phi = [](const Vector& x) {
        Matrix g = Matrix::Zero(2, 2);
        g(0, 1) = 2.0 * x(1);
        g(1, 1) = 3.0 * x(1) * x(1);
        return g;
    };
    imm.W = [printed](const Vector& y, const Vector&) { return remark4_W(y, printed); };
    imm.L = [](const Vector&, const Vector&) { return Vector::Zero(4).eval(); };
    return imm;
}

Benchmark remark4(const std::map<std::string, double>& ov) {
    const ParamTable t("remark4-oscillator", {}, ov);
    Benchmark b;
    b.id = "remark4-oscillator";
    b.title = "Oscillator x1' = x2^3, x2' = -x1, y = x1, z = (x1, x2, x2^2, x2^3)";
    b.params = t.params();
    b.system = {2, 0, 1, [](const Vector& x, const Vector&) { return vec({x(1) * x(1) * x(1), -x(0)}); },
                [](const Vector& x, const Vector&) { return vec({x(0)}); }};
    b.immersion = remark4_immersion(false);
    b.controller = no_input();
    b.box = {vec({-2, -2}), vec({2, 2}), Vector(0), Vector(0)};
    b.readout = ReadoutKind::Linear;
    b.C = [](const Vector&) {
        Matrix c(1, 2);
        c << 1, 0;
        return c;
    };
    b.gmap = MonomialMap::identity(4);
    b.defaults.x0 = vec({1.0, 0.5});
    b.defaults.xi0 = Vector::Ones(4);
    b.defaults.estimator = lre_estimator(4);
    return b;
}

Benchmark maglev(const std::map<std::string, double>& ov) {
    const ParamTable t("maglev",
                       {{"m", 0.0844, "kg", "levitated mass"},
                        {"R", 2.52, "Ohm", "coil resistance"},
                        {"g", 9.81, "m/s^2", "gravity"},
                        {"k", 6404e-6, "H*m", "inductance constant"},
                        {"Kp", 400.0, "-", "controller proportional gain"},
                        {"alpha", 80.0, "-", "controller damping gain"},
                        {"x2_ref", 0.01, "m", "position set point"},
                        {"u_max", 0.0, "V", "voltage limit, 0 for none"}},
                       ov);
    t.require_positive({"m", "R", "g", "k", "Kp", "alpha"});
    MaglevParams mp{t["m"], t["R"], t["g"], t["k"], t["Kp"], t["alpha"], t["x2_ref"]};
    const double m = mp.m, R = mp.R, g = mp.g, k = mp.k;

    Benchmark b;
    b.id = "maglev";
    b.title = "Magnetic levitation: flux x1, position x2, momentum x3, current y = (1 - x2) x1 / k";
    b.params = t.params();
    b.system.n = 3;
    b.system.m = 1;
    b.system.p = 1;
    b.system.f = [=](const Vector& x, const Vector& u) {
        return vec({-(R / k) * (1.0 - x(1)) * x(0) + u(0), x(2) / m, x(0) * x(0) / (2.0 * k) - m * g});
    };
    b.system.h = [k](const Vector& x, const Vector&) { return vec({(1.0 - x(1)) * x(0) / k}); };
    b.immersion.n = 3;
    b.immersion.ell = 1;
    b.immersion.phi = [k](const Vector& x) { return vec({x(0) * x(0) / (2.0 * k)}); };
    b.immersion.grad_phi = [k](const Vector& x) {
        Matrix gr = Matrix::Zero(1, 3);
        gr(0, 0) = x(0) / k;
        return gr;
    };
    b.immersion.W = [=](const Vector& y, const Vector& u) {
        Matrix w = Matrix::Zero(4, 4);
        w(1, 2) = 1.0 / m;
        w(2, 3) = 1.0;
        w(3, 0) = -(R * y(0) - u(0)) / k;
        return w;
    };
    b.immersion.L = [=](const Vector& y, const Vector& u) { return vec({-R * y(0) + u(0), 0.0, -m * g, 0.0}); };
    const double umax = t["u_max"];
    if (umax < 0.0) {
        throw ValidationError("parameter 'u_max' must be non-negative");
    }
    b.controller = {"state-feedback", [mp, umax](double, const Vector& y, const Vector& xh) {
                        const double u = maglev_controller(y(0), xh, mp);
                        return vec({umax > 0.0 ? std::clamp(u, -umax, umax) : u});
                    }};
    b.box = {vec({-1.0, -0.5, -1.0}), vec({1.0, 0.9, 1.0}), vec({-10.0}), vec({10.0})};
    b.readout = ReadoutKind::Maglev;
    b.gmap = MonomialMap::maglev();
    b.defaults.x0 = Vector::Zero(3);
    b.defaults.xi0 = vec({1.0, 3.0, 2.0, 1.5});
    auto& e = b.defaults.estimator;
    e.kind = EstimatorKind::LsOnly;
    e.gamma_H = 680.0;
    e.chi0 = 150.0;
    e.f0 = 10.0;
    e.gamma_i = Vector::Ones(4);
    e.G0 = Vector::Constant(14, 1.5);
    e.theta0 = Vector::Constant(4, 1.5);
    return b;
}

Benchmark pmsm(const std::map<std::string, double>& ov) {
    const ParamTable t("pmsm",
                       concat(std::vector<Param>{{"R", 1.5, "Ohm", "stator resistance"},
                                                 {"L", 0.009, "H", "stator inductance"},
                                                 {"lambda_m", 0.15, "Wb", "magnet flux"},
                                                 {"n_p", 3.0, "-", "pole pairs"},
                                                 {"J", 0.008, "kg*m^2", "rotor inertia"},
                                                 {"f", 0.001, "N*m*s", "viscous friction"},
                                                 {"tau_L", 0.05, "N*m", "load torque (known)"},
                                                 {"u_amp", 5.0, "V", "rotating voltage amplitude"},
                                                 {"u_freq", 20.0, "rad/s", "final electrical frequency"},
                                                 {"u_ramp", 1.0, "s", "frequency ramp duration"}}),
                       ov);
    t.require_positive({"R", "L", "lambda_m", "n_p", "J", "f", "u_ramp"});
    const double R = t["R"], L = t["L"], lam = t["lambda_m"], J = t["J"], fr = t["f"], tl = t["tau_L"];
    const double np = t["n_p"];
    const double amp = t["u_amp"], w = t["u_freq"], ramp = t["u_ramp"];
    if (np != std::round(np)) {
        throw ValidationError("parameter 'n_p' must be an integer");
    }

    auto currents = [=](const Vector& x) {
        return vec({(x(0) + lam * std::cos(np * x(2))) / L, (x(1) + lam * std::sin(np * x(2))) / L});
    };

    Benchmark b;
    b.id = "pmsm";
    b.title = "Non-salient PMSM in alpha-beta frame, current measurement only";
    b.params = t.params();
    b.system.n = 4;
    b.system.m = 2;
    b.system.p = 2;
    b.system.f = [=](const Vector& x, const Vector& u) {
        const Vector y = currents(x);
        return vec({-R * y(0) + u(0), -R * y(1) + u(1), x(3),
                    -(fr / J) * x(3) + (np / J) * (y(1) * x(0) - y(0) * x(1)) - tl / J});
    };
    b.system.h = [=](const Vector& x, const Vector&) { return currents(x); };
    b.immersion.n = 4;
    b.immersion.ell = 0;
    b.immersion.W = [=](const Vector& y, const Vector&) {
        Matrix m = Matrix::Zero(4, 4);
        m(2, 3) = 1.0;
        m(3, 0) = (np / J) * y(1);
        m(3, 1) = -(np / J) * y(0);
        m(3, 3) = -fr / J;
        return m;
    };
    b.immersion.L = [=](const Vector& y, const Vector& u) {
        return vec({-R * y(0) + u(0), -R * y(1) + u(1), 0.0, -tl / J});
    };
    // Rotating voltage whose frequency ramps linearly to w over `ramp` seconds.
    b.controller = {"open-loop", [=](double time, const Vector&, const Vector&) {
                        const double ph = time < ramp ? 0.5 * w * time * time / ramp : w * (time - 0.5 * ramp);
                        return vec({amp * std::cos(ph), amp * std::sin(ph)});
                    }};
    b.box = {vec({-0.5, -0.5, 0.0, -50.0}), vec({0.5, 0.5, 2.0 * std::numbers::pi, 50.0}), vec({-50.0, -50.0}),
             vec({50.0, 50.0})};
    b.readout = ReadoutKind::Pmsm;
    b.gmap = MonomialMap::pmsm();
    b.defaults.x0 = vec({-lam, 0.0, 0.0, 0.0});
    b.defaults.xi0 = vec({-lam + 0.1, -0.05, 0.0, 0.0});
    auto& e = b.defaults.estimator;
    e.kind = EstimatorKind::Full;
    e.gamma_H = 50.0;
    e.chi0 = 5.0;
    e.f0 = 1.0;
    e.gamma_i = Vector::Constant(2, 100.0);
    e.G0 = Vector::Zero(3);
    e.theta0 = Vector::Zero(2);
    return b;
}

Benchmark prismatic(const std::map<std::string, double>& ov) {
    const ParamTable t("prismatic-robot",
                       {{"a", 1.0, "kg", "inertia coefficient"},
                        {"b", 3.0, "kg*m^2", "inertia offset"},
                        {"Kp1", 70.0, "-", "position gain, joint 1"},
                        {"Kp2", 30.0, "-", "position gain, joint 2"},
                        {"Kd", 10.0, "-", "momentum gain (both joints)"},
                        {"q1_ref", 0.1, "m", "set point, joint 1"},
                        {"q2_ref", std::numbers::pi / 8.0, "rad", "set point, joint 2"}},
                       ov);
    t.require_positive({"a", "b", "Kp1", "Kp2", "Kd"});
    const double a = t["a"], bb = t["b"];
    PdParams pd;
    pd.Kp = Eigen::Vector2d(t["Kp1"], t["Kp2"]).asDiagonal();
    pd.Kd = t["Kd"] * Eigen::Matrix2d::Identity();
    pd.target = Eigen::Vector2d(t["q1_ref"], t["q2_ref"]);

    Benchmark b;
    b.id = "prismatic-robot";
    b.title = "Two DoF prismatic robot, positions measured, M = diag(a q2^2 + b, a)";
    b.params = t.params();
    b.system.n = 4;
    b.system.m = 2;
    b.system.p = 2;
    b.system.f = [=](const Vector& x, const Vector& u) {
        const double den = a * x(1) * x(1) + bb;
        return vec({x(2) / den, x(3) / a, u(0), -2.0 * a * x(1) * x(2) * x(2) / (den * den) + u(1)});
    };
    b.system.h = [](const Vector& x, const Vector&) { return vec({x(0), x(1)}); };
    b.immersion.n = 4;
    b.immersion.ell = 1;
    b.immersion.phi = [](const Vector& x) { return vec({0.5 * x(2) * x(2)}); };
    b.immersion.grad_phi = [](const Vector& x) {
        Matrix g = Matrix::Zero(1, 4);
        g(0, 2) = x(2);
        return g;
    };
    b.immersion.W = [=](const Vector& y, const Vector& u) {
        const double den = a * y(1) * y(1) + bb;
        Matrix w = Matrix::Zero(5, 5);
        w(0, 2) = 1.0 / den;
        w(1, 3) = 1.0 / a;
        w(3, 4) = -4.0 * a * y(1) / (den * den);
        w(4, 2) = u(0);
        return w;
    };
    b.immersion.L = [](const Vector&, const Vector& u) { return vec({0.0, 0.0, u(0), u(1), 0.0}); };
    b.controller = {"state-feedback", [pd](double, const Vector& y, const Vector& xh) {
                        return pd_controller(y, xh.segment(2, 2), pd);
                    }};
    b.box = {vec({-1, -1, -2, -2}), vec({1, 1, 2, 2}), vec({-10, -10}), vec({10, 10})};
    b.readout = ReadoutKind::Linear;
    b.C = [](const Vector&) {
        Matrix c = Matrix::Zero(2, 4);
        c(0, 0) = 1.0;
        c(1, 1) = 1.0;
        return c;
    };
    b.gmap = MonomialMap::identity(5);
    b.defaults.x0 = Vector::Zero(4);
    b.defaults.xi0 = vec({1, 2, 3, 4, 5});
    auto& e = b.defaults.estimator;
    e.kind = EstimatorKind::Full;
    e.gamma_H = 1.8;
    e.chi0 = 5.0;
    e.f0 = 20.0;
    e.gamma_i = Vector::Constant(5, 1100.0);
    e.k = 10.0;
    e.G0 = Vector::Ones(5);
    e.theta0 = Vector::Ones(5);
    return b;
}

Benchmark robotic_leg(const std::map<std::string, double>& ov) {
    const ParamTable t("robotic-leg",
                       concat(std::vector<Param>{{"m1", 1.0, "kg", "leg mass"}, {"m2", 1.0, "kg*m^2", "body inertia"}},
                              sinusoid_params("u1", 0.0, 1.0, 1.0, 0.0),
                              sinusoid_params("u2", 0.0, 1.0, 1.0, std::numbers::pi / 2.0)),
                       ov);
    t.require_positive({"m1", "m2"});
    const double m1 = t["m1"], m2 = t["m2"];
    const Sinusoid u1 = sinusoid_from(t, "u1");
    const Sinusoid u2 = sinusoid_from(t, "u2");

    Benchmark b;
    b.id = "robotic-leg";
    b.title = "Three DoF robotic leg, leg length measured, M = diag(m1, m1 q1^2, m2)";
    b.params = t.params();
    b.system.n = 6;
    b.system.m = 2;
    b.system.p = 1;
    b.system.f = [=](const Vector& x, const Vector& u) {
        const double q1 = x(0);
        return vec({x(3) / m1, x(4) / (m1 * q1 * q1), x(5) / m2, x(4) * x(4) / (m1 * q1 * q1 * q1) + u(0), u(1),
                    -u(1)});
    };
    b.system.h = [](const Vector& x, const Vector&) { return vec({x(0)}); };
    b.immersion.n = 6;
    b.immersion.ell = 1;
    b.immersion.phi = [](const Vector& x) { return vec({x(4) * x(4)}); };
    b.immersion.grad_phi = [](const Vector& x) {
        Matrix g = Matrix::Zero(1, 6);
        g(0, 4) = 2.0 * x(4);
        return g;
    };
    b.immersion.W = [=](const Vector& y, const Vector& u) {
        const double q1 = y(0);
        Matrix w = Matrix::Zero(7, 7);
        w(0, 3) = 1.0 / m1;
        w(1, 4) = 1.0 / (m1 * q1 * q1);
        w(2, 5) = 1.0 / m2;
        w(3, 6) = 1.0 / (m1 * q1 * q1 * q1);
        w(6, 4) = 2.0 * u(1);
        return w;
    };
    b.immersion.L = [](const Vector&, const Vector& u) { return vec({0, 0, 0, u(0), u(1), -u(1), 0}); };
    b.controller = {"open-loop",
                    [u1, u2](double time, const Vector&, const Vector&) { return vec({u1(time), u2(time)}); }};
    b.box = {vec({0.5, -2, -2, -2, -2, -2}), vec({2, 2, 2, 2, 2, 2}), vec({-2, -2}), vec({2, 2})};
    b.readout = ReadoutKind::Linear;
    b.C = [](const Vector&) {
        Matrix c = Matrix::Zero(1, 6);
        c(0, 0) = 1.0;
        return c;
    };
    b.gmap = MonomialMap::identity(7);
    b.defaults.x0 = vec({1.0, 0.0, 0.0, 0.0, 0.5, 0.0});
    b.defaults.xi0 = Vector::Ones(7);
    b.defaults.estimator = lre_estimator(7);
    return b;
}

} // namespace

Immersion remark4_printed_immersion() { return remark4_immersion(true); }

Benchmark make_benchmark(const std::string& id, const std::map<std::string, double>& overrides) {
    if (id == "levine-marino") return levine_marino(overrides);
    if (id == "bernard-1") return bernard(false, overrides);
    if (id == "bernard-2") return bernard(true, overrides);
    if (id == "remark4-oscillator") return remark4(overrides);
    if (id == "maglev") return maglev(overrides);
    if (id == "pmsm") return pmsm(overrides);
    if (id == "prismatic-robot") return prismatic(overrides);
    if (id == "robotic-leg") return robotic_leg(overrides);
    throw ValidationError("unknown benchmark '" + id + "'");
}

} // namespace gpebo
