#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace fracwave {

/// Deterministic stream of standard normal draws, addressed by
/// (base_seed, stream, substream). The Box-Muller transform is applied to
/// raw mt19937_64 output, so identical keys give identical draws on every
/// platform, independent of the standard library's normal_distribution.
class GaussianStream {
public:
    GaussianStream(std::uint64_t base_seed, std::uint64_t stream, std::uint64_t substream = 0) {
        std::seed_seq seq{static_cast<std::uint32_t>(base_seed),
                          static_cast<std::uint32_t>(base_seed >> 32),
                          static_cast<std::uint32_t>(stream),
                          static_cast<std::uint32_t>(stream >> 32),
                          static_cast<std::uint32_t>(substream),
                          static_cast<std::uint32_t>(substream >> 32)};
        engine_.seed(seq);
    }

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        // uniform in (0,1]: avoids log(0)
        const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1p-53;
        const double u2 = static_cast<double>(engine_() >> 11) * 0x1p-53;
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    Eigen::VectorXd normals(Eigen::Index n) {
        Eigen::VectorXd z(n);
        for (Eigen::Index i = 0; i < n; ++i) z[i] = next();
        return z;
    }

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace fracwave
