#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "fracwave/time_grid.hpp"

namespace fracwave {

/// Hurst roughness exponent, valid on (0,1). The solver targets h < 1/2
/// (anti-persistent increments) but the generator supports the full range.
class HurstParameter {
public:
    explicit HurstParameter(double h) : h_(h) {
        if (!(h > 0.0 && h < 1.0))
            throw std::invalid_argument("HurstParameter: h must lie in (0,1)");
    }
    double value() const { return h_; }

private:
    double h_;
};

/// cov(xi(s), xi(t)) = (t^2H + s^2H - |t-s|^2H) / 2 for s,t >= 0.
inline double fbm_covariance(double s, double t, HurstParameter h) {
    if (s < 0.0 || t < 0.0)
        throw std::domain_error("fbm_covariance: times must be nonnegative");
    const double two_h = 2.0 * h.value();
    return 0.5 * (std::pow(t, two_h) + std::pow(s, two_h) - std::pow(std::abs(t - s), two_h));
}

/// Discrete fractional Brownian path on a grid; values[0] = 0 always.
struct FbmPath {
    TimeGrid grid;
    Eigen::VectorXd values;  // one per grid point, including t=0
};

/// Cholesky factor of the covariance matrix of path *values* at the strictly
/// positive grid times. Built once per (grid, H) pair and shared across all
/// trajectories; immutable after construction.
class CovarianceFactor {
public:
    static CovarianceFactor build(const TimeGrid& grid, HurstParameter h) {
        const Eigen::Index n = static_cast<Eigen::Index>(grid.size()) - 1;
        Eigen::MatrixXd sigma(n, n);
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index k = 0; k <= j; ++k) {
                const double c = fbm_covariance(grid[k + 1], grid[j + 1], h);
                sigma(j, k) = c;
                sigma(k, j) = c;
            }
        const double max_diag = sigma.diagonal().maxCoeff();

        double jitter = 0.0;
        for (double eps : {0.0, 1e-12, 1e-11, 1e-10, 1e-9, 1e-8}) {
            jitter = eps * max_diag;
            Eigen::MatrixXd shifted = sigma;
            shifted.diagonal().array() += jitter;
            Eigen::LLT<Eigen::MatrixXd> llt(shifted);
            if (llt.info() == Eigen::Success) {
                Eigen::MatrixXd lower = llt.matrixL();
                if ((lower.diagonal().array() > 0.0).all())
                    return CovarianceFactor(grid, h, std::move(lower), jitter);
            }
        }
        throw std::runtime_error("CovarianceFactor: covariance matrix is ill-conditioned "
                                 "(factorization failed up to jitter 1e-8 * maxdiag)");
    }

    const TimeGrid& grid() const { return grid_; }
    HurstParameter hurst() const { return hurst_; }
    const Eigen::MatrixXd& lower() const { return lower_; }
    double jitter_used() const { return jitter_; }
    Eigen::Index dim() const { return lower_.rows(); }

private:
    CovarianceFactor(TimeGrid grid, HurstParameter h, Eigen::MatrixXd lower, double jitter)
        : grid_(std::move(grid)), hurst_(h), lower_(std::move(lower)), jitter_(jitter) {}

    TimeGrid grid_;
    HurstParameter hurst_;
    Eigen::MatrixXd lower_;
    double jitter_;
};

/// Correlate i.i.d. standard normals into a path: values = L * z, with 0
/// prepended at t=0. Deterministic in its inputs.
inline FbmPath sample_path(const CovarianceFactor& factor, const Eigen::VectorXd& gaussians) {
    if (gaussians.size() != factor.dim())
        throw std::invalid_argument("sample_path: gaussian count does not match grid");
    Eigen::VectorXd values(factor.dim() + 1);
    values[0] = 0.0;
    values.tail(factor.dim()) = factor.lower().template triangularView<Eigen::Lower>() * gaussians;
    return FbmPath{factor.grid(), std::move(values)};
}

/// Subsample a path onto a coarser grid; shared values are copied bit-exactly.
inline FbmPath restrict(const FbmPath& path, const TimeGrid& coarse) {
    const auto idx = path.grid.indices_of(coarse);
    Eigen::VectorXd values(static_cast<Eigen::Index>(idx.size()));
    for (std::size_t j = 0; j < idx.size(); ++j)
        values[static_cast<Eigen::Index>(j)] = path.values[static_cast<Eigen::Index>(idx[j])];
    return FbmPath{coarse, std::move(values)};
}

}  // namespace fracwave
