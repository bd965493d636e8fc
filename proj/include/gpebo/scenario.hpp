#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gpebo/benchmarks.hpp"
#include "gpebo/core_math.hpp"

namespace gpebo {

// Seeded multisine added to the benchmark input: Σ a_k sin(ω_k t + φ_k),
// a_k ∈ [0, amplitude], ω_k ∈ [0.5, 5] rad/s, φ_k ∈ [0, 2π).
struct Dither {
    double amplitude = 0.0;
    int components = 3;
};

struct Scenario {
    std::string benchmark;
    std::map<std::string, double> params;
    std::optional<Vector> x0;
    std::optional<Vector> xi0;
    std::optional<double> dt;
    std::optional<double> horizon;

    // Estimator settings; unset fields fall back to the benchmark defaults.
    std::optional<std::string> mode;
    std::optional<double> gamma_H, gamma_G, chi0, f0, k, gradient_gamma;
    std::optional<Vector> gamma_i, G0, theta0;

    std::optional<Dither> dither;
    // Feed the controller the true state instead of the estimate.
    bool true_state_feedback = false;
    std::uint64_t seed = 0;
    int output_every = 1;
    double threshold = 1e-2;
    bool plot = true;
    std::string out_dir; // empty: no files written
};

// Parses the JSON scenario format; unknown keys are rejected.
Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario_file(const std::string& path);

// One emitted trace row (every `output_every` steps, plus the final step).
struct TraceRow {
    double t = 0.0;
    Vector u;
    Vector x, x_hat, x_tilde;
    double ident_err = 0.0; // ‖lift(x) − (ξ − Φθ)‖∞
    Vector theta_hat, theta_tilde;
    double Delta = 0.0, normF = 0.0, zeta = 0.0, chi = 0.0;
    Vector mix_err; // 𝐘_i − Δ 𝒢_i(θ)
    LreSample sample;
    double reg_residual = 0.0; // ‖𝒴 − ψ 𝒢(θ)‖∞
};

struct RunSummary {
    std::string benchmark;
    int exit_code = 0; // 0 ok, 3 divergence, 4 estimator failure
    std::string failure;
    double failure_time = std::numeric_limits<double>::quiet_NaN();
    bool diverged = false;

    double final_time = 0.0;
    double theta_err0 = 0.0;
    double final_theta_err = 0.0;
    double final_x_err = 0.0;
    double threshold = 1e-2;
    double t_theta = std::numeric_limits<double>::quiet_NaN(); // settles below threshold from here on
    double t_x = std::numeric_limits<double>::quiet_NaN();

    double grammian_min_eig = 0.0;
    double grammian_max_eig = 0.0;
    bool ie_grammian = false;
    bool ie_rank = false;

    double max_ident_err = 0.0;
    double max_reg_residual = 0.0;
    double max_mix_err = 0.0; // max_i |𝐘_i − Δ𝒢_i| / (1 + |𝒢_i|)

    std::string to_text() const;
};

struct RunResult {
    RunSummary summary;
    std::vector<TraceRow> trace;
    Vector theta_true;     // full n_z vector
    std::vector<std::string> monomials;
};

// Tolerances of the excitation diagnostics: rank at σ_min > kRankTol·σ_max,
// Grammian at λ_min > kGrammianRelDelta·λ_max (the squared scale of the same test).
inline constexpr double kRankTol = 1e-6;
inline constexpr double kGrammianRelDelta = 1e-12;

// Co-simulates plant, extension, regression, estimator and controller.
// Throws ValidationError before the run starts; divergence and estimator
// failures end the run early and are reported in the summary.
RunResult run_scenario(const Scenario& sc);

// Writes states.csv, estimator.csv, regressor.csv, summary and plot.gp.
void write_outputs(const RunResult& r, const std::string& dir, bool plot);

// Earliest time from which err stays below thr until the end; NaN if never.
double settling_time(const std::vector<double>& t, const std::vector<double>& err, double thr);

// Log-linear envelope of a decaying error after the transient.
struct ExpRateFit {
    bool ok = false;
    double slope = 0.0;         // fitted d(ln err)/dt
    double upper_intercept = 0; // ln err(t) ≤ upper_intercept + slope·t on the window
    double t_start = 0.0, t_end = 0.0;
};
ExpRateFit exponential_rate_check(const std::vector<double>& t, const std::vector<double>& err, double floor = 1e-10);

// ---------------------------------------------------------------------------

struct ImmersionReport {
    std::string benchmark;
    int samples = 0;
    double max_r1 = 0.0;
    double max_r2 = 0.0;
    double max_total = 0.0;
    std::string worst_location; // e.g. "r1[0]" or "r2[1]"
    double grad_phi_rel_err = 0.0;
    bool pass = false;

    std::string to_text() const;
};

inline constexpr double kMatchingTol = 1e-9;

ImmersionReport verify_immersion(const Benchmark& b, const Immersion& imm, int samples, std::uint64_t seed = 1);
ImmersionReport verify_immersion(const std::string& id, int samples, std::uint64_t seed = 1);

// Injected fault: the oscillator gets the miswritten fourth row; other
// benchmarks lose their W12 block (or get a shifted L when ℓ = 0).
Immersion corrupted_immersion(const Benchmark& b);

} // namespace gpebo
