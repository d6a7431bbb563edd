#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fracwave/fbm.hpp"
#include "fracwave/gaussian_stream.hpp"
#include "fracwave/time_grid.hpp"

namespace fracwave {

/// Diagonal covariance operator of the modal noise field: mode i is scaled
/// by sqrt(q_i). Either a power-law decay sqrt(q_i) = lambda_i^{-sigma} or an
/// explicit nonnegative weight list. sigma = 0 is the identity-weight case.
class NoiseSpec {
public:
    static NoiseSpec power_law(double sigma, Eigen::Index m, HurstParameter hurst) {
        if (sigma < 0.0) throw std::invalid_argument("NoiseSpec: sigma must be nonnegative");
        Eigen::VectorXd sqrt_q(m);
        for (Eigen::Index i = 0; i < m; ++i) {
            const double ipow = static_cast<double>(i + 1) * std::numbers::pi;
            sqrt_q[i] = std::pow(ipow * ipow, -sigma);
        }
        return NoiseSpec(sigma, std::move(sqrt_q), hurst);
    }

    static NoiseSpec explicit_weights(std::vector<double> q, HurstParameter hurst) {
        Eigen::VectorXd sqrt_q(static_cast<Eigen::Index>(q.size()));
        for (std::size_t i = 0; i < q.size(); ++i) {
            if (q[i] < 0.0) throw std::invalid_argument("NoiseSpec: q_i must be nonnegative");
            sqrt_q[static_cast<Eigen::Index>(i)] = std::sqrt(q[i]);
        }
        return NoiseSpec(0.0, std::move(sqrt_q), hurst);
    }

    Eigen::Index modes() const { return sqrt_q_.size(); }
    double sigma() const { return sigma_; }
    HurstParameter hurst() const { return hurst_; }
    const Eigen::VectorXd& sqrt_weights() const { return sqrt_q_; }

private:
    NoiseSpec(double sigma, Eigen::VectorXd sqrt_q, HurstParameter hurst)
        : sigma_(sigma), sqrt_q_(std::move(sqrt_q)), hurst_(hurst) {}

    double sigma_;
    Eigen::VectorXd sqrt_q_;
    HurstParameter hurst_;
};

/// Identifies the random substream of one Monte Carlo trajectory. Mode i of
/// the field draws from substream (base_seed, trajectory, i), so results do
/// not depend on scheduling order.
struct StreamKey {
    std::uint64_t base_seed = 0;
    std::uint64_t trajectory = 0;
};

/// The modal noise field values b_i(t_j) = sqrt(q_i) xi_i(t_j): m independent
/// scaled fractional Brownian paths on a shared grid. Immutable after sampling.
class ModalFbmEnsemble {
public:
    ModalFbmEnsemble(TimeGrid grid, NoiseSpec spec, Eigen::MatrixXd values)
        : grid_(std::move(grid)), spec_(std::move(spec)), values_(std::move(values)) {
        if (values_.rows() != spec_.modes() ||
            values_.cols() != static_cast<Eigen::Index>(grid_.size()))
            throw std::invalid_argument("ModalFbmEnsemble: value matrix shape mismatch");
    }

    static ModalFbmEnsemble zero(const NoiseSpec& spec, const TimeGrid& grid) {
        return ModalFbmEnsemble(
            grid, spec,
            Eigen::MatrixXd::Zero(spec.modes(), static_cast<Eigen::Index>(grid.size())));
    }

    const TimeGrid& grid() const { return grid_; }
    const NoiseSpec& spec() const { return spec_; }

    /// Modal vector (sqrt(q_i) xi_i(t_j))_i at grid index j.
    Eigen::VectorXd field_at(std::size_t j) const {
        if (j >= grid_.size())
            throw std::invalid_argument("ModalFbmEnsemble: grid index out of range");
        return values_.col(static_cast<Eigen::Index>(j));
    }

    const Eigen::MatrixXd& values() const { return values_; }

private:
    TimeGrid grid_;
    NoiseSpec spec_;
    Eigen::MatrixXd values_;
};

/// Draw one ensemble: per mode an independent fractional Brownian path from
/// the mode's own substream, scaled by sqrt(q_i).
inline ModalFbmEnsemble sample_field(const NoiseSpec& spec, const TimeGrid& grid,
                                     const CovarianceFactor& factor, StreamKey key) {
    if (!(factor.grid() == grid))
        throw std::invalid_argument("sample_field: factor built on a different grid");
    if (factor.hurst().value() != spec.hurst().value())
        throw std::invalid_argument("sample_field: factor built for a different Hurst parameter");
    const Eigen::Index m = spec.modes();
    Eigen::MatrixXd values(m, static_cast<Eigen::Index>(grid.size()));
    for (Eigen::Index i = 0; i < m; ++i) {
        GaussianStream stream(key.base_seed, key.trajectory, static_cast<std::uint64_t>(i));
        const FbmPath path = sample_path(factor, stream.normals(factor.dim()));
        values.row(i) = spec.sqrt_weights()[i] * path.values.transpose();
    }
    return ModalFbmEnsemble(grid, spec, std::move(values));
}

/// Subsample every mode onto a coarser grid; shared nodes are bit-exact.
inline ModalFbmEnsemble restrict_ensemble(const ModalFbmEnsemble& ensemble,
                                          const TimeGrid& coarse) {
    const auto idx = ensemble.grid().indices_of(coarse);
    Eigen::MatrixXd values(ensemble.values().rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t j = 0; j < idx.size(); ++j)
        values.col(static_cast<Eigen::Index>(j)) =
            ensemble.values().col(static_cast<Eigen::Index>(idx[j]));
    return ModalFbmEnsemble(coarse, ensemble.spec(), std::move(values));
}

}  // namespace fracwave
