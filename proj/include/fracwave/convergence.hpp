#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "fracwave/fbm.hpp"
#include "fracwave/noise_field.hpp"
#include "fracwave/stepper.hpp"
#include "fracwave/time_grid.hpp"

namespace fracwave {

/// Sparse modal initial data, e.g. {{1, 0.25}} puts coefficient 1/4 on mode 1.
using ModalSpec = std::vector<std::pair<Eigen::Index, double>>;

inline ModalVector to_modal(const ModalSpec& spec, Eigen::Index m) {
    ModalVector v = ModalVector::Zero(m);
    for (const auto& [mode, coeff] : spec) {
        if (mode < 1 || mode > m)
            throw std::invalid_argument("to_modal: mode index out of range");
        v[mode - 1] = coeff;
    }
    return v;
}

/// Full description of one coupled-refinement Monte Carlo experiment.
struct ExperimentConfig {
    double alpha = 0.8;
    double hurst = 0.4;
    double sigma = 0.05;
    double final_time = 0.2;
    std::vector<std::size_t> step_counts = {4, 8, 16, 32};
    Eigen::Index modes = 256;
    std::size_t trajectories = 500;
    std::uint64_t base_seed = 1;
    std::string f_tag = "paper";
    ModalSpec u0 = {{1, 0.25}};
    ModalSpec v0 = {{3, 0.5}};
    std::size_t workers = 0;  // 0 = hardware concurrency
    bool noise = true;        // false: drive with the zero field (deterministic runs)

    void validate() const {
        if (!(final_time > 0.0))
            throw std::invalid_argument("ExperimentConfig: final time must be positive");
        if (trajectories < 1)
            throw std::invalid_argument("ExperimentConfig: need at least one trajectory");
        if (step_counts.empty())
            throw std::invalid_argument("ExperimentConfig: need at least one step count");
        for (std::size_t k = 0; k + 1 < step_counts.size(); ++k)
            if (step_counts[k + 1] != 2 * step_counts[k])
                throw std::invalid_argument("ExperimentConfig: step counts must double");
        HurstParameter h(hurst);  // validates range
        (void)h;
    }

    SchemeConfig scheme_for(std::size_t steps) const {
        return SchemeConfig{alpha, final_time / static_cast<double>(steps), modes, steps, f_tag};
    }
};

/// Per-resolution strong errors e_N = sqrt(mean ||u_N - u_2N||^2) with
/// jackknife standard errors and the successive log2 rates.
struct ErrorTable {
    struct Row {
        std::size_t steps;
        double error;
        double stderr_jack;
        std::optional<double> rate;
    };
    std::vector<Row> rows;
    double kappa = 0.0;
    double predicted_rate = 0.0;
    ExperimentConfig config;
};

/// Regularity bookkeeping for the power-law noise decay sqrt(q_i) =
/// lambda_i^{-sigma} on (0,1): the supremal admissible operator exponent is
/// rho = sigma - 1/4 (summability of lambda_i^{2 rho - 2 sigma} with
/// lambda_i ~ i^2), giving kappa = alpha/2 + H alpha + 2(sigma - 1/4). The
/// predicted strong rate is min(kappa/alpha, H + 1/2).
struct RateLabel {
    double kappa;
    double predicted_rate;
};

inline RateLabel kappa_label(double alpha, HurstParameter hurst, double sigma) {
    const double rho_sup = sigma - 0.25;
    const double kappa = 0.5 * alpha + hurst.value() * alpha + 2.0 * rho_sup;
    const double rate = std::min(kappa / alpha, hurst.value() + 0.5);
    return RateLabel{kappa, rate};
}

/// Run fn(traj) for traj = 0..count-1 on `workers` threads. Any exception
/// aborts the run, rethrown with the trajectory index attached. Results must
/// be written into per-trajectory slots so the reduction stays deterministic.
inline void parallel_trajectories(std::size_t count, std::size_t workers,
                                  const std::function<void(std::size_t)>& fn) {
    if (workers == 0) workers = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    workers = std::min(workers, count);
    if (workers <= 1) {
        for (std::size_t traj = 0; traj < count; ++traj) {
            try {
                fn(traj);
            } catch (const std::exception& e) {
                throw std::runtime_error("trajectory " + std::to_string(traj) + ": " + e.what());
            }
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::optional<std::pair<std::size_t, std::string>> first_error;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t traj = next.fetch_add(1);
                if (traj >= count) return;
                {
                    std::scoped_lock lock(error_mutex);
                    if (first_error) return;
                }
                try {
                    fn(traj);
                } catch (const std::exception& e) {
                    std::scoped_lock lock(error_mutex);
                    if (!first_error || traj < first_error->first)
                        first_error = {traj, e.what()};
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error)
        throw std::runtime_error("trajectory " + std::to_string(first_error->first) + ": " +
                                 first_error->second);
}

/// Shared immutable context of one experiment: the finest grid, its
/// covariance factor, the noise spec, and one stepper per resolution.
class ExperimentContext {
public:
    explicit ExperimentContext(const ExperimentConfig& config)
        : config_(config),
          fine_grid_(TimeGrid::uniform(config.final_time, config.step_counts.back())),
          spec_(NoiseSpec::power_law(config.sigma, config.modes, HurstParameter(config.hurst))) {
        config_.validate();
        if (config.noise)
            factor_.emplace(CovarianceFactor::build(fine_grid_, HurstParameter(config.hurst)));
        grids_.reserve(config.step_counts.size());
        steppers_.reserve(config.step_counts.size());
        for (std::size_t n : config.step_counts) {
            grids_.push_back(TimeGrid::uniform(config.final_time, n));
            steppers_.emplace_back(config.scheme_for(n));
        }
        initial_.u = to_modal(config.u0, config.modes);
        initial_.v = to_modal(config.v0, config.modes);
    }

    const ExperimentConfig& config() const { return config_; }
    const TimeGrid& fine_grid() const { return fine_grid_; }
    const NoiseSpec& spec() const { return spec_; }
    const CovarianceFactor& factor() const { return *factor_; }
    const std::vector<Stepper>& steppers() const { return steppers_; }
    const PairState& initial() const { return initial_; }

    /// One trajectory: sample the noise once at the finest resolution,
    /// restrict it down, and solve at every resolution with the same noise.
    /// Returns the final displacement u(T) per resolution.
    std::vector<ModalVector> run_trajectory(std::size_t trajectory_index) const {
        const ModalFbmEnsemble fine =
            config_.noise
                ? sample_field(spec_, fine_grid_, *factor_,
                               StreamKey{config_.base_seed, trajectory_index})
                : ModalFbmEnsemble::zero(spec_, fine_grid_);
        std::vector<ModalVector> finals;
        finals.reserve(steppers_.size());
        for (std::size_t k = 0; k < steppers_.size(); ++k) {
            const bool finest = (k + 1 == steppers_.size());
            const ModalFbmEnsemble ens =
                finest ? fine : restrict_ensemble(fine, grids_[k]);
            finals.push_back(steppers_[k].solve(ens, initial_).u);
        }
        return finals;
    }

private:
    ExperimentConfig config_;
    TimeGrid fine_grid_;
    NoiseSpec spec_;
    std::optional<CovarianceFactor> factor_;
    std::vector<TimeGrid> grids_;
    std::vector<Stepper> steppers_;
    PairState initial_;
};

/// Monte Carlo strong-error table: e_N over adjacent resolution pairs, with
/// trajectories reduced in index order regardless of scheduling.
inline ErrorTable strong_errors(const ExperimentConfig& config) {
    config.validate();
    if (config.trajectories < 2)
        throw std::invalid_argument("strong_errors: need at least 2 trajectories");
    if (config.step_counts.size() < 2)
        throw std::invalid_argument("strong_errors: need at least 2 resolutions");

    const ExperimentContext ctx(config);
    const std::size_t pairs = config.step_counts.size() - 1;
    const std::size_t m_traj = config.trajectories;

    // sq_diff[pair][traj] = ||u_N - u_2N||^2 for that trajectory
    std::vector<std::vector<double>> sq_diff(pairs, std::vector<double>(m_traj, 0.0));
    parallel_trajectories(m_traj, config.workers, [&](std::size_t traj) {
        const std::vector<ModalVector> finals = ctx.run_trajectory(traj);
        for (std::size_t k = 0; k < pairs; ++k)
            sq_diff[k][traj] = (finals[k] - finals[k + 1]).squaredNorm();
    });

    ErrorTable table;
    table.config = config;
    const RateLabel label = kappa_label(config.alpha, HurstParameter(config.hurst), config.sigma);
    table.kappa = label.kappa;
    table.predicted_rate = label.predicted_rate;

    for (std::size_t k = 0; k < pairs; ++k) {
        double sum = 0.0;
        for (double d : sq_diff[k]) sum += d;
        const double e = std::sqrt(sum / static_cast<double>(m_traj));

        // jackknife standard error of e_N over trajectories
        const double mm = static_cast<double>(m_traj);
        std::vector<double> loo(m_traj);
        double loo_mean = 0.0;
        for (std::size_t i = 0; i < m_traj; ++i) {
            loo[i] = std::sqrt(std::max(0.0, (sum - sq_diff[k][i]) / (mm - 1.0)));
            loo_mean += loo[i];
        }
        loo_mean /= mm;
        double var = 0.0;
        for (double x : loo) var += (x - loo_mean) * (x - loo_mean);
        const double se = std::sqrt((mm - 1.0) / mm * var);

        std::optional<double> rate;
        if (k > 0 && table.rows[k - 1].error > 0.0 && e > 0.0)
            rate = std::log2(table.rows[k - 1].error / e);
        table.rows.push_back({config.step_counts[k], e, se, rate});
    }
    return table;
}

/// Empirical Holder probe: least-squares slope of log E||u(t)-u(s)||^2
/// against log(t-s), with u taken from a fine reference solve. The proxy's
/// own discretization bias is a documented caveat; keep ref_steps well above
/// T divided by the smallest gap.
struct HolderProbeResult {
    double slope = 0.0;
    std::vector<double> gaps;
    std::vector<double> mean_sq_increment;
};

inline HolderProbeResult holder_probe(const ExperimentConfig& config,
                                      const std::vector<std::pair<double, double>>& time_pairs,
                                      std::size_t ref_steps = 512) {
    config.validate();
    const double T = config.final_time;
    const double tau = T / static_cast<double>(ref_steps);

    // map each pair to grid indices and group by gap
    struct IndexPair {
        std::size_t s, t;
    };
    std::vector<IndexPair> idx_pairs;
    std::vector<double> pair_gap;
    for (const auto& [s, t] : time_pairs) {
        if (!(t > s && s >= 0.0 && t <= T))
            throw std::invalid_argument("holder_probe: need 0 <= s < t <= T");
        const auto snap = [&](double x) {
            const double r = x / tau;
            const auto j = static_cast<std::size_t>(std::llround(r));
            if (std::abs(r - static_cast<double>(j)) > 1e-9)
                throw std::invalid_argument("holder_probe: pair time not on reference grid");
            return j;
        };
        idx_pairs.push_back({snap(s), snap(t)});
        pair_gap.push_back(t - s);
    }
    std::vector<double> gaps = pair_gap;
    std::sort(gaps.begin(), gaps.end());
    gaps.erase(std::unique(gaps.begin(), gaps.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-12; }),
               gaps.end());
    if (gaps.size() < 3)
        throw std::invalid_argument("holder_probe: need at least 3 distinct gap scales");

    const TimeGrid grid = TimeGrid::uniform(T, ref_steps);
    const NoiseSpec spec =
        NoiseSpec::power_law(config.sigma, config.modes, HurstParameter(config.hurst));
    std::optional<CovarianceFactor> factor;
    if (config.noise) factor = CovarianceFactor::build(grid, HurstParameter(config.hurst));
    const Stepper stepper(config.scheme_for(ref_steps));
    PairState initial{to_modal(config.u0, config.modes), to_modal(config.v0, config.modes)};

    std::vector<std::vector<double>> per_traj(config.trajectories,
                                              std::vector<double>(idx_pairs.size(), 0.0));
    parallel_trajectories(config.trajectories, config.workers, [&](std::size_t traj) {
        const ModalFbmEnsemble ens =
            config.noise ? sample_field(spec, grid, *factor, StreamKey{config.base_seed, traj})
                         : ModalFbmEnsemble::zero(spec, grid);
        std::vector<PairState> snapshots;
        snapshots.reserve(ref_steps + 1);
        stepper.solve(ens, initial, 1, &snapshots);
        for (std::size_t p = 0; p < idx_pairs.size(); ++p)
            per_traj[traj][p] =
                (snapshots[idx_pairs[p].t].u - snapshots[idx_pairs[p].s].u).squaredNorm();
    });

    HolderProbeResult result;
    result.gaps = gaps;
    result.mean_sq_increment.assign(gaps.size(), 0.0);
    std::vector<std::size_t> counts(gaps.size(), 0);
    for (std::size_t p = 0; p < idx_pairs.size(); ++p) {
        const auto g = static_cast<std::size_t>(
            std::lower_bound(gaps.begin(), gaps.end(), pair_gap[p] - 1e-12) - gaps.begin());
        for (std::size_t traj = 0; traj < config.trajectories; ++traj)
            result.mean_sq_increment[g] += per_traj[traj][p];
        counts[g] += config.trajectories;
    }
    for (std::size_t g = 0; g < gaps.size(); ++g)
        result.mean_sq_increment[g] /= static_cast<double>(counts[g]);

    // least-squares slope in log-log coordinates
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const auto n = static_cast<double>(gaps.size());
    for (std::size_t g = 0; g < gaps.size(); ++g) {
        const double x = std::log(gaps[g]);
        const double y = std::log(result.mean_sq_increment[g]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    result.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return result;
}

}  // namespace fracwave
