#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace fracwave {

/// Coefficients in the orthonormal sine eigenbasis phi_i(x) = sqrt(2) sin(i pi x)
/// of the Dirichlet Laplacian on (0,1). The L2 norm equals the Euclidean norm.
using ModalVector = Eigen::VectorXd;

/// Per-mode cosine/sine of lambda_i^{alpha/2} * t.
struct TrigFactors {
    Eigen::VectorXd cos;
    Eigen::VectorXd sin;
};

/// Truncated sine eigenbasis of A = -Laplacian on (0,1) with eigenvalues
/// lambda_i = (i pi)^2, plus the collocation machinery for pointwise
/// nonlinearities: interior nodes x_k = k/(m+1) and the symmetric transform
/// matrix G with G(k,i) = phi_{i+1}(x_{k+1}), which satisfies G*G = (m+1) I.
class SineBasis {
public:
    SineBasis(Eigen::Index m, double alpha) : m_(m), alpha_(alpha) {
        if (m < 1) throw std::invalid_argument("SineBasis: mode count must be positive");
        if (!(alpha > 0.0 && alpha <= 1.0))
            throw std::invalid_argument("SineBasis: alpha must lie in (0,1]");
        lambda_.resize(m);
        mu_.resize(m);
        for (Eigen::Index i = 0; i < m; ++i) {
            const double ipow = static_cast<double>(i + 1) * std::numbers::pi;
            lambda_[i] = ipow * ipow;
            mu_[i] = std::pow(lambda_[i], 0.5 * alpha);
        }
        transform_.resize(m, m);
        const double h = 1.0 / static_cast<double>(m + 1);
        for (Eigen::Index k = 0; k < m; ++k)
            for (Eigen::Index i = 0; i < m; ++i)
                transform_(k, i) = std::numbers::sqrt2 *
                                   std::sin(static_cast<double>(i + 1) * std::numbers::pi *
                                            static_cast<double>(k + 1) * h);
    }

    Eigen::Index modes() const { return m_; }
    double alpha() const { return alpha_; }

    /// lambda_i = (i pi)^2, 1-based mode index.
    double eigenvalue(Eigen::Index i) const {
        if (i < 1 || i > m_) throw std::invalid_argument("SineBasis: mode index out of range");
        return lambda_[i - 1];
    }

    /// lambda_i^{alpha/2}, the rotation frequency of mode i.
    const Eigen::VectorXd& frequencies() const { return mu_; }
    const Eigen::VectorXd& eigenvalues() const { return lambda_; }

    /// Collocation node x_k = k/(m+1), 1-based.
    double node(Eigen::Index k) const {
        if (k < 1 || k > m_) throw std::invalid_argument("SineBasis: node index out of range");
        return static_cast<double>(k) / static_cast<double>(m_ + 1);
    }

    /// A^gamma acting diagonally: coeff_i -> lambda_i^gamma coeff_i.
    ModalVector frac_power_apply(double gamma, const ModalVector& v) const {
        check_size(v);
        if (gamma == 0.0) return v;
        return (lambda_.array().pow(gamma) * v.array()).matrix();
    }

    /// Physical values at the collocation nodes.
    Eigen::VectorXd evaluate(const ModalVector& v) const {
        check_size(v);
        return transform_ * v;
    }

    /// Modal coefficients from nodal values; exact inverse of evaluate().
    ModalVector project(const Eigen::VectorXd& values) const {
        check_size(values);
        return (transform_ * values) / static_cast<double>(m_ + 1);
    }

    /// cos/sin of lambda_i^{alpha/2} t per mode.
    TrigFactors trig_factors(double t) const {
        if (t < 0.0) throw std::domain_error("SineBasis: trig factors need t >= 0");
        TrigFactors f;
        f.cos = (mu_ * t).array().cos().matrix();
        f.sin = (mu_ * t).array().sin().matrix();
        return f;
    }

    const Eigen::MatrixXd& transform_matrix() const { return transform_; }

private:
    void check_size(const Eigen::VectorXd& v) const {
        if (v.size() != m_) throw std::invalid_argument("SineBasis: size mismatch");
    }

    Eigen::Index m_;
    double alpha_;
    Eigen::VectorXd lambda_;
    Eigen::VectorXd mu_;
    Eigen::MatrixXd transform_;
};

/// Evaluate a modal vector at an arbitrary point of (0,1).
inline double evaluate_at(const ModalVector& v, double x) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        s += v[i] * std::numbers::sqrt2 *
             std::sin(static_cast<double>(i + 1) * std::numbers::pi * x);
    return s;
}

}  // namespace fracwave
