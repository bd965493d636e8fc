#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gpebo/core_math.hpp"
#include "gpebo/estimator.hpp"
#include "gpebo/immersion.hpp"
#include "gpebo/regression.hpp"
#include "gpebo/system.hpp"

namespace gpebo {

struct Param {
    std::string name;
    double value = 0.0;
    std::string unit;
    std::string description;
};

// Sampling box for matching-equation checks; keeps away from singular regions.
struct OperatingBox {
    Vector x_lo, x_hi;
    Vector u_lo, u_hi;
};

// How the measured output enters the regression.
enum class ReadoutKind {
    Linear, // y = C(u) x, LRE
    Maglev, // 14-term separable NLPRE
    Pmsm,   // 3-term separable NLPRE on the flux circle
};

enum class EstimatorKind { Full, LsOnly, Gradient };

const char* to_string(EstimatorKind k);
EstimatorKind estimator_kind_from_string(const std::string& s);

struct EstimatorConfig {
    EstimatorKind kind = EstimatorKind::Full;
    double gamma_H = 1.0;
    std::optional<double> gamma_G;
    double chi0 = 1.0;
    double f0 = 1.0;
    std::optional<double> k;
    Vector gamma_i;     // per estimated parameter
    Vector G0;          // initial 𝒢̂, length n_ψ
    Vector theta0;      // initial θ̂ for the DREM / gradient stage
    double gradient_gamma = 1.0;
};

struct ScenarioDefaults {
    Vector x0;
    Vector xi0;
    double dt = 1e-3;
    double horizon = 10.0;
    EstimatorConfig estimator;
};

struct Benchmark {
    std::string id;
    std::string title;
    std::vector<Param> params;
    NonlinearSystem system;
    Immersion immersion;
    InputPolicy controller;
    OperatingBox box;
    ReadoutKind readout = ReadoutKind::Linear;
    std::function<Matrix(const Vector& u)> C; // Linear readout only
    MonomialMap gmap;                         // 𝒢 for the regression
    ScenarioDefaults defaults;

    double param(const std::string& name) const;
    int nz() const { return immersion.nz(); }
};

// Catalog ids in listing order.
const std::vector<std::string>& benchmark_ids();

// Throws ValidationError for an unknown id or override key.
Benchmark make_benchmark(const std::string& id, const std::map<std::string, double>& overrides = {});

// Certainty-equivalence levitation law
//   u = R y − K_p((x̂1 − x1*)/α + (x̂2 − x2*)) − (α/m + K_p) x̂3,   x1* = √(2kmg).
struct MaglevParams {
    double m = 0.0844;
    double R = 2.52;
    double g = 9.81;
    double k = 6404e-6;
    double Kp = 400.0;
    double alpha = 80.0;
    double x2_ref = 0.01;

    double x1_ref() const { return std::sqrt(2.0 * k * m * g); }
};
double maglev_controller(double y, const Vector& x_hat, const MaglevParams& p);

// u = −K_p (q − q*) − K_d p̂.
struct PdParams {
    Eigen::Matrix2d Kp = Eigen::Vector2d(70.0, 30.0).asDiagonal();
    Eigen::Matrix2d Kd = 10.0 * Eigen::Matrix2d::Identity();
    Eigen::Vector2d target{0.1, 0.39269908169872414};
};
Vector pd_controller(const Vector& q, const Vector& p_hat, const PdParams& p);

// Oscillator immersion whose fourth row reads (0, −3y, 0, 1) instead of
// (0, 0, −3y, 0). It violates the matching equations; used as a corrupted fixture.
Immersion remark4_printed_immersion();

} // namespace gpebo
