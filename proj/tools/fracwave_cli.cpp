// Command-line front end for the fractional stochastic wave solver.
// Exit codes: 0 success, 2 invalid config/arguments, 3 runtime failure,
// 4 statistical failure (fbm-check).

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "fracwave/fracwave.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadConfig = 2;
constexpr int kExitRuntime = 3;
constexpr int kExitStatistical = 4;

/// SPDE_SEED overrides the config's seed when set.
bool apply_seed_override(fracwave::ExperimentConfig& config) {
    const char* env = std::getenv("SPDE_SEED");
    if (!env) return true;
    try {
        config.base_seed = std::stoull(env);
        return true;
    } catch (const std::exception&) {
        std::cerr << "error: SPDE_SEED is not an unsigned integer: " << env << "\n";
        return false;
    }
}

int run_convergence(const std::string& config_path, const std::string& out_path) {
    fracwave::ExperimentConfig config;
    try {
        config = fracwave::ConfigFile::parse_file(config_path).to_experiment();
        if (!apply_seed_override(config)) return kExitBadConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadConfig;
    }

    fracwave::ErrorTable table;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        table = fracwave::strong_errors(config);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return kExitRuntime;
    }
    out << fracwave::manifest_header(config, wall);
    out << fracwave::convergence_csv_body(table);
    out.close();

    std::printf("kappa = %s, predicted rate = %s\n",
                fracwave::format_number(table.kappa).c_str(),
                fracwave::format_number(table.predicted_rate).c_str());
    std::printf("%6s %14s %14s %8s\n", "N", "error", "stderr", "rate");
    for (const auto& row : table.rows) {
        std::printf("%6zu %14.6e %14.6e %8s\n", row.steps, row.error, row.stderr_jack,
                    row.rate ? fracwave::format_number(*row.rate).substr(0, 8).c_str() : "");
    }
    std::printf("wrote %s (%.1f s)\n", out_path.c_str(), wall);
    return kExitOk;
}

int run_fbm_check(double hurst, std::size_t grid_points, std::size_t paths, double final_time) {
    if (!(hurst > 0.0 && hurst < 1.0)) {
        std::cerr << "error: hurst must lie in (0,1)\n";
        return kExitBadConfig;
    }
    if (grid_points < 2 || paths < 100) {
        std::cerr << "error: need at least 2 grid points and 100 paths\n";
        return kExitBadConfig;
    }
    try {
        const fracwave::HurstParameter h(hurst);
        const auto grid = fracwave::TimeGrid::uniform(final_time, grid_points);
        const auto factor = fracwave::CovarianceFactor::build(grid, h);
        const auto n = static_cast<Eigen::Index>(grid_points);

        Eigen::MatrixXd sum_xy = Eigen::MatrixXd::Zero(n, n);
        fracwave::GaussianStream stream(0x5eed, 0);
        for (std::size_t p = 0; p < paths; ++p) {
            const auto path = fracwave::sample_path(factor, stream.normals(n));
            const Eigen::VectorXd v = path.values.tail(n);
            sum_xy.noalias() += v * v.transpose();
        }
        const Eigen::MatrixXd sample_cov = sum_xy / static_cast<double>(paths);

        double worst = 0.0;
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index k = 0; k <= j; ++k) {
                const double exact =
                    fracwave::fbm_covariance(grid[k + 1], grid[j + 1], h);
                const double vj = fracwave::fbm_covariance(grid[j + 1], grid[j + 1], h);
                const double vk = fracwave::fbm_covariance(grid[k + 1], grid[k + 1], h);
                const double se =
                    std::sqrt((exact * exact + vj * vk) / static_cast<double>(paths));
                worst = std::max(worst, std::abs(sample_cov(j, k) - exact) / se);
            }
        std::printf("max covariance deviation: %.3f standard errors over %zu paths, %zu points\n",
                    worst, paths, grid_points);
        if (worst > 3.0) {
            std::cerr << "statistical failure: deviation exceeds 3 standard errors\n";
            return kExitStatistical;
        }
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}

int run_solve(const std::string& config_path, std::size_t snapshot_every,
              const std::string& out_path) {
    fracwave::ExperimentConfig config;
    try {
        config = fracwave::ConfigFile::parse_file(config_path).to_experiment();
        if (!apply_seed_override(config)) return kExitBadConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadConfig;
    }

    try {
        const std::size_t steps = config.step_counts.back();
        if (snapshot_every == 0) snapshot_every = steps;
        const auto grid = fracwave::TimeGrid::uniform(config.final_time, steps);
        const auto spec = fracwave::NoiseSpec::power_law(config.sigma, config.modes,
                                                         fracwave::HurstParameter(config.hurst));
        const auto ensemble =
            config.noise
                ? fracwave::sample_field(
                      spec, grid,
                      fracwave::CovarianceFactor::build(grid,
                                                        fracwave::HurstParameter(config.hurst)),
                      fracwave::StreamKey{config.base_seed, 0})
                : fracwave::ModalFbmEnsemble::zero(spec, grid);

        const fracwave::Stepper stepper(config.scheme_for(steps));
        fracwave::PairState state{fracwave::to_modal(config.u0, config.modes),
                                  fracwave::to_modal(config.v0, config.modes)};
        std::vector<fracwave::PairState> snapshots;
        stepper.solve(ensemble, state, 1, &snapshots);

        const Eigen::Index x_points = std::min<Eigen::Index>(config.modes, 31);
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "error: cannot write " << out_path << "\n";
            return kExitRuntime;
        }
        out << fracwave::manifest_header(config, 0.0);
        out << "t,x,u\n";
        for (std::size_t j = snapshot_every; j <= steps; j += snapshot_every) {
            const double t = grid[j];
            for (Eigen::Index l = 1; l <= x_points; ++l) {
                const double x = static_cast<double>(l) / static_cast<double>(x_points + 1);
                out << fracwave::format_number(t) << ',' << fracwave::format_number(x) << ','
                    << fracwave::format_number(fracwave::evaluate_at(snapshots[j].u, x)) << '\n';
            }
        }
        std::printf("wrote %s\n", out_path.c_str());
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Solver and Monte Carlo harness for the semilinear fractional stochastic "
                 "wave equation driven by fractional Brownian motion"};
    app.require_subcommand(1);
    app.set_version_flag("--version", fracwave::kToolVersion);

    std::string config_path;
    std::string out_path = "convergence.csv";
    auto* conv = app.add_subcommand("convergence",
                                    "Coupled-refinement strong convergence rate table");
    conv->add_option("config", config_path, "experiment config file")->required();
    conv->add_option("-o,--output", out_path, "output CSV path");

    double hurst = 0.5;
    std::size_t grid_points = 16;
    std::size_t n_paths = 100000;
    double fbm_T = 0.2;
    auto* check = app.add_subcommand("fbm-check",
                                     "Statistical validation of the FBM generator");
    check->add_option("--hurst", hurst, "Hurst parameter in (0,1)")->required();
    check->add_option("--grid-size", grid_points, "number of positive grid points");
    check->add_option("--paths", n_paths, "Monte Carlo sample count");
    check->add_option("--final-time", fbm_T, "grid endpoint");

    std::string solve_config;
    std::string solve_out = "solution.csv";
    std::size_t snapshot_every = 0;
    auto* solve = app.add_subcommand("solve", "Single-trajectory solve with solution dump");
    solve->add_option("config", solve_config, "experiment config file")->required();
    solve->add_option("--snapshot-every", snapshot_every,
                      "dump every k-th step (default: final state only)");
    solve->add_option("-o,--output", solve_out, "output CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitBadConfig;
    }

    if (conv->parsed()) return run_convergence(config_path, out_path);
    if (check->parsed()) return run_fbm_check(hurst, grid_points, n_paths, fbm_T);
    if (solve->parsed()) return run_solve(solve_config, snapshot_every, solve_out);
    return kExitBadConfig;
}
