#include "gpebo/regression.hpp"

#include <numbers>

namespace gpebo {

double GEntry::eval(const Vector& theta) const {
    double acc = 0.0;
    for (const auto& term : terms) {
        double v = term.coef;
        for (std::size_t i = 0; i < term.exponents.size(); ++i) {
            for (int e = 0; e < term.exponents[i]; ++e) {
                v *= theta(static_cast<Eigen::Index>(i));
            }
        }
        acc += v;
    }
    return acc;
}

namespace {

GEntry monomial(int n_theta, std::initializer_list<int> indices) {
    GEntry g;
    GEntry::Term term;
    term.exponents.assign(n_theta, 0);
    std::string name;
    for (int i : indices) {
        term.exponents[i] += 1;
        if (!name.empty()) {
            name += "*";
        }
        name += "th" + std::to_string(i + 1);
    }
    g.name = name;
    g.terms.push_back(std::move(term));
    return g;
}

bool is_linear_in(const GEntry& g, int index) {
    if (g.terms.size() != 1 || g.terms[0].coef != 1.0) {
        return false;
    }
    const auto& e = g.terms[0].exponents;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] != (static_cast<int>(i) == index ? 1 : 0)) {
            return false;
        }
    }
    return true;
}

} // namespace

MonomialMap::MonomialMap(int n_theta, std::vector<GEntry> entries) : n_theta_(n_theta), entries_(std::move(entries)) {
    for (const auto& g : entries_) {
        for (const auto& t : g.terms) {
            if (static_cast<int>(t.exponents.size()) != n_theta_) {
                throw DimensionError("MonomialMap: exponent vector length differs from n_theta");
            }
        }
    }
    while (n_linear_ < n_psi() && n_linear_ < n_theta_ && is_linear_in(entries_[n_linear_], n_linear_)) {
        ++n_linear_;
    }
}

MonomialMap MonomialMap::identity(int n) {
    std::vector<GEntry> e;
    for (int i = 0; i < n; ++i) {
        e.push_back(monomial(n, {i}));
    }
    return MonomialMap(n, std::move(e));
}

MonomialMap MonomialMap::maglev() {
    std::vector<GEntry> e;
    for (int i = 0; i < 4; ++i) {
        e.push_back(monomial(4, {i}));
    }
    for (int i = 0; i < 4; ++i) {
        e.push_back(monomial(4, {i, i}));
    }
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            e.push_back(monomial(4, {i, j}));
        }
    }
    return MonomialMap(4, std::move(e));
}

MonomialMap MonomialMap::pmsm() {
    std::vector<GEntry> e{monomial(2, {0}), monomial(2, {1})};
    GEntry sq;
    sq.name = "th1*th1+th2*th2";
    sq.terms = {GEntry::Term{1.0, {2, 0}}, GEntry::Term{1.0, {0, 2}}};
    e.push_back(std::move(sq));
    return MonomialMap(2, std::move(e));
}

std::vector<std::string> MonomialMap::names() const {
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& g : entries_) {
        out.push_back(g.name);
    }
    return out;
}

Vector MonomialMap::eval(const Vector& theta) const {
    if (theta.size() != n_theta_) {
        throw DimensionError("MonomialMap::eval: theta has the wrong length");
    }
    Vector g(n_psi());
    for (int i = 0; i < n_psi(); ++i) {
        g(i) = entries_[i].eval(theta);
    }
    return g;
}

Vector quad_expand(const Vector& phi1, const Vector& phi2) {
    if (phi1.size() != 4 || phi2.size() != 4) {
        throw DimensionError("quad_expand: inputs must have length 4");
    }
    Vector out(10);
    for (int i = 0; i < 4; ++i) {
        out(i) = phi1(i) * phi2(i);
    }
    int k = 4;
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            out(k++) = phi1(i) * phi2(j) + phi1(j) * phi2(i);
        }
    }
    return out;
}

SeparableNlpre maglev_nlpre(double y, const Vector& xi, const Matrix& Phi, double k, double t) {
    if (xi.size() != 4 || Phi.rows() != 4 || Phi.cols() != 4) {
        throw DimensionError("maglev_nlpre: expects a 4-dimensional lifted state");
    }
    if (!(k > 0.0)) {
        throw ValidationError("maglev_nlpre: k must be positive");
    }
    const Vector phi1 = Phi.row(0).transpose();
    const Vector phi2 = Phi.row(1).transpose();

    SeparableNlpre r;
    r.gmap = MonomialMap::maglev();
    r.sample.t = t;
    r.sample.Y = Vector::Constant(1, k * y - xi(0) + xi(0) * xi(1));
    r.sample.psi.resize(1, 14);
    r.sample.psi.block(0, 0, 1, 4) = ((xi(1) - 1.0) * phi1 + xi(0) * phi2).transpose();
    r.sample.psi.block(0, 4, 1, 10) = -quad_expand(phi1, phi2).transpose();
    return r;
}

SeparableNlpre pmsm_nlpre(const Vector& y, const Vector& xi, double inductance, double lambda_m, double t) {
    if (y.size() != 2 || xi.size() < 2) {
        throw DimensionError("pmsm_nlpre: expects two currents and at least two flux copies");
    }
    if (!(inductance > 0.0) || !(lambda_m > 0.0)) {
        throw ValidationError("pmsm_nlpre: L and lambda_m must be positive");
    }
    const double e1 = inductance * y(0) - xi(0);
    const double e2 = inductance * y(1) - xi(1);

    SeparableNlpre r;
    r.gmap = MonomialMap::pmsm();
    r.sample.t = t;
    r.sample.Y = Vector::Constant(1, e1 * e1 + e2 * e2 - lambda_m * lambda_m);
    r.sample.psi.resize(1, 3);
    r.sample.psi << -2.0 * e1, -2.0 * e2, -1.0;
    return r;
}

double pmsm_angle(const Vector& y, const Vector& flux_hat, double inductance, int pole_pairs) {
    if (pole_pairs <= 0) {
        throw ValidationError("pmsm_angle: pole pairs must be positive");
    }
    const double c = inductance * y(0) - flux_hat(0);
    const double s = inductance * y(1) - flux_hat(1);
    if (c == 0.0 && s == 0.0) {
        throw ValidationError("pmsm_angle: undefined angle for a zero flux vector");
    }
    double electrical = std::atan2(s, c);
    if (electrical < 0.0) {
        electrical += 2.0 * std::numbers::pi;
    }
    const double period = 2.0 * std::numbers::pi / pole_pairs;
    double a = electrical / pole_pairs;
    if (a >= period) {
        a -= period;
    }
    return a;
}

} // namespace gpebo
