#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <iostream>

#include "gpebo/benchmarks.hpp"
#include "gpebo/errors.hpp"
#include "gpebo/scenario.hpp"

namespace fs = std::filesystem;

namespace {

int run_one(const std::string& file, const std::string& out, std::optional<double> dt, std::optional<double> horizon,
            bool quiet) {
    gpebo::Scenario sc = gpebo::load_scenario_file(file);
    if (!out.empty()) sc.out_dir = out;
    if (dt) sc.dt = dt;
    if (horizon) sc.horizon = horizon;
    const gpebo::RunResult r = gpebo::run_scenario(sc);
    if (!quiet) std::cout << r.summary.to_text();
    if (r.summary.exit_code != 0) {
        std::cerr << "error: " << r.summary.failure << " at t = " << r.summary.failure_time << "\n";
    }
    return r.summary.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Parameter-estimation-based observers for nonlinear systems"};
    app.require_subcommand(1);

    std::string file, out, bench;
    std::optional<double> dt, horizon;
    bool quiet = false;
    auto* run = app.add_subcommand("run", "Run a scenario file, or every *.json in a directory");
    run->add_option("scenario", file, "Scenario JSON file or directory")->required();
    run->add_option("--out", out, "Output directory (a per-scenario subdirectory when running a directory)");
    run->add_option("--dt", dt, "Override the integration step");
    run->add_option("--horizon", horizon, "Override the simulation horizon");
    run->add_flag("--quiet", quiet, "Do not print the summary");

    int samples = 1000;
    std::uint64_t seed = 1;
    bool corrupt = false;
    auto* verify = app.add_subcommand("verify", "Check the immersion matching equations on random samples");
    verify->add_option("benchmark", bench, "Benchmark id")->required();
    verify->add_option("--samples", samples, "Number of samples")->check(CLI::PositiveNumber);
    verify->add_option("--seed", seed, "Sampling seed");
    verify->add_flag("--corrupt", corrupt, "Check the injected-fault immersion instead");

    auto* list = app.add_subcommand("list-benchmarks", "List benchmarks and their parameters");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*run) {
            if (fs::is_directory(file)) {
                std::vector<fs::path> files;
                for (const auto& e : fs::directory_iterator(file)) {
                    if (e.path().extension() == ".json") files.push_back(e.path());
                }
                std::sort(files.begin(), files.end());
                int worst = 0;
                for (const auto& f : files) {
                    const std::string sub = out.empty() ? std::string() : (fs::path(out) / f.stem()).string();
                    std::cout << "# " << f.string() << "\n";
                    worst = std::max(worst, run_one(f.string(), sub, dt, horizon, quiet));
                }
                return worst;
            }
            return run_one(file, out, dt, horizon, quiet);
        }
        if (*verify) {
            const gpebo::Benchmark b = gpebo::make_benchmark(bench);
            const gpebo::Immersion imm = corrupt ? gpebo::corrupted_immersion(b) : b.immersion;
            const gpebo::ImmersionReport rep = gpebo::verify_immersion(b, imm, samples, seed);
            std::cout << rep.to_text();
            return rep.pass ? 0 : 1;
        }
        if (*list) {
            for (const auto& id : gpebo::benchmark_ids()) {
                const gpebo::Benchmark b = gpebo::make_benchmark(id);
                std::cout << id << ": " << b.title << " (n=" << b.system.n << ", m=" << b.system.m
                          << ", p=" << b.system.p << ", n_z=" << b.nz() << ")\n";
                for (const auto& p : b.params) {
                    std::cout << "  " << p.name << " = " << p.value << " [" << p.unit << "]  " << p.description
                              << "\n";
                }
            }
            return 0;
        }
    } catch (const gpebo::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const gpebo::DimensionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const gpebo::DivergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const gpebo::EstimatorError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const gpebo::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
