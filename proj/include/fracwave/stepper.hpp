#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fracwave/drift.hpp"
#include "fracwave/noise_field.hpp"
#include "fracwave/sine_basis.hpp"

namespace fracwave {

/// Displacement/velocity pair in modal coordinates.
struct PairState {
    ModalVector u;
    ModalVector v;

    PairState& operator+=(const PairState& other) {
        u += other.u;
        v += other.v;
        return *this;
    }
};

/// Fixed-step configuration of the trigonometric time discretization.
struct SchemeConfig {
    double alpha = 0.8;
    double tau = 0.0;
    Eigen::Index m = 0;
    std::size_t steps = 0;
    std::string f_tag = "zero";

    double final_time() const { return tau * static_cast<double>(steps); }

    void validate() const {
        if (!(alpha > 0.0 && alpha <= 1.0))
            throw std::invalid_argument("SchemeConfig: alpha must lie in (0,1]");
        if (!(tau > 0.0)) throw std::invalid_argument("SchemeConfig: tau must be positive");
        if (steps < 1) throw std::invalid_argument("SchemeConfig: need at least one step");
        if (m < 1) throw std::invalid_argument("SchemeConfig: need at least one mode");
    }
};

/// One-step integrator: exact per-mode rotation of the linear part, drift
/// increment through the semigroup at the left endpoint, and the
/// integration-by-parts noise increment with closed-form time integrals.
/// All per-step trig tables are precomputed; the object is immutable and
/// safe to share across trajectory workers.
class Stepper {
public:
    explicit Stepper(const SchemeConfig& config)
        : config_(config),
          basis_(config.m, config.alpha),
          drift_(make_drift(config.f_tag)) {
        config_.validate();
        const TrigFactors f = basis_.trig_factors(config_.tau);
        cos_tau_ = f.cos;
        sin_tau_ = f.sin;
        inv_mu_ = basis_.frequencies().cwiseInverse();
        // closed forms of the two noise-block time integrals over one step:
        //   int_0^tau cos(mu r) dr   = sin(mu tau) / mu
        //   int_0^tau mu sin(mu r) dr = 1 - cos(mu tau)
        integral_cos_ = inv_mu_.cwiseProduct(sin_tau_);
        integral_sin_ = Eigen::VectorXd::Ones(config_.m) - cos_tau_;
    }

    const SineBasis& basis() const { return basis_; }
    const SchemeConfig& config() const { return config_; }
    const DriftFunction& drift() const { return drift_; }
    const Eigen::VectorXd& integral_cos() const { return integral_cos_; }
    const Eigen::VectorXd& integral_sin() const { return integral_sin_; }

    /// Exact propagator of the linear part over an arbitrary time t:
    /// per mode, [u; v] -> [c u + s v / mu; -mu s u + c v].
    PairState rotation_apply(const PairState& state, double t) const {
        check_state(state);
        const TrigFactors f = basis_.trig_factors(t);
        const Eigen::VectorXd& mu = basis_.frequencies();
        PairState out;
        out.u = f.cos.cwiseProduct(state.u) + inv_mu_.cwiseProduct(f.sin).cwiseProduct(state.v);
        out.v = -mu.cwiseProduct(f.sin).cwiseProduct(state.u) + f.cos.cwiseProduct(state.v);
        return out;
    }

    /// tau * [S(tau) f(u_j) / mu; C(tau) f(u_j)], with f evaluated by
    /// collocation: nodal values -> pointwise f -> projection.
    PairState drift_increment(const ModalVector& u_j) const {
        check_vector(u_j);
        Eigen::VectorXd w = basis_.evaluate(u_j);
        for (Eigen::Index k = 0; k < w.size(); ++k) w[k] = drift_(w[k]);
        const ModalVector fm = basis_.project(w);
        PairState inc;
        inc.u = config_.tau * inv_mu_.cwiseProduct(sin_tau_).cwiseProduct(fm);
        inc.v = config_.tau * cos_tau_.cwiseProduct(fm);
        return inc;
    }

    /// Noise block of one step, from field values at the two endpoints. The
    /// left-endpoint freeze makes the position part cancel exactly and the
    /// velocity part reduce to the field increment; both are computed from
    /// the closed-form integrals as written.
    PairState noise_increment(const ModalVector& b_j, const ModalVector& b_next) const {
        check_vector(b_j);
        check_vector(b_next);
        PairState inc;
        inc.u = -inv_mu_.cwiseProduct(sin_tau_).cwiseProduct(b_j) + integral_cos_.cwiseProduct(b_j);
        inc.v = b_next - cos_tau_.cwiseProduct(b_j) - integral_sin_.cwiseProduct(b_j);
        return inc;
    }

    /// One full step of the scheme.
    PairState step(const PairState& state, const ModalVector& b_j,
                   const ModalVector& b_next) const {
        PairState out = rotation_apply(state, config_.tau);
        out += drift_increment(state.u);
        out += noise_increment(b_j, b_next);
        return out;
    }

    /// Advance N steps with the given noise ensemble. If snapshot_every > 0,
    /// the state after every snapshot_every-th step (plus the initial state)
    /// is appended to *snapshots.
    PairState solve(const ModalFbmEnsemble& ensemble, PairState state,
                    std::size_t snapshot_every = 0,
                    std::vector<PairState>* snapshots = nullptr) const {
        if (ensemble.grid().size() != config_.steps + 1)
            throw std::invalid_argument("Stepper: ensemble grid does not match step count");
        const auto grid_step = ensemble.grid().step();
        if (!grid_step || *grid_step != config_.tau)
            throw std::invalid_argument("Stepper: ensemble grid spacing does not match tau");
        if (ensemble.spec().modes() != config_.m)
            throw std::invalid_argument("Stepper: ensemble mode count does not match");
        check_state(state);
        if (snapshots && snapshot_every > 0) snapshots->push_back(state);
        for (std::size_t j = 0; j < config_.steps; ++j) {
            state = step(state, ensemble.field_at(j), ensemble.field_at(j + 1));
            if (snapshots && snapshot_every > 0 && (j + 1) % snapshot_every == 0)
                snapshots->push_back(state);
        }
        return state;
    }

private:
    void check_vector(const ModalVector& v) const {
        if (v.size() != config_.m) throw std::invalid_argument("Stepper: modal size mismatch");
    }
    void check_state(const PairState& s) const {
        check_vector(s.u);
        check_vector(s.v);
    }

    SchemeConfig config_;
    SineBasis basis_;
    DriftFunction drift_;
    Eigen::VectorXd cos_tau_;
    Eigen::VectorXd sin_tau_;
    Eigen::VectorXd inv_mu_;
    Eigen::VectorXd integral_cos_;
    Eigen::VectorXd integral_sin_;
};

}  // namespace fracwave
