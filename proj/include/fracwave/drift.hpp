#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace fracwave {

/// Pointwise drift nonlinearity f: R -> R with its Lipschitz constant.
/// Registered tags:
///   "zero"       f(u) = 0
///   "paper"      f(u) = cos(u) + u   (the benchmark problem's drift, L = 2)
///   "linear:a,b" f(u) = a*u + b
struct DriftFunction {
    std::string tag;
    std::function<double(double)> f;
    double lipschitz = 0.0;

    double operator()(double u) const { return f(u); }
};

inline DriftFunction make_drift(const std::string& tag) {
    if (tag == "zero")
        return DriftFunction{tag, [](double) { return 0.0; }, 0.0};
    if (tag == "paper")
        return DriftFunction{tag, [](double u) { return std::cos(u) + u; }, 2.0};
    if (tag.rfind("linear:", 0) == 0) {
        const std::string args = tag.substr(7);
        const auto comma = args.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("make_drift: linear drift needs \"linear:a,b\"");
        std::size_t pos_a = 0, pos_b = 0;
        const std::string sa = args.substr(0, comma), sb = args.substr(comma + 1);
        const double a = std::stod(sa, &pos_a);
        const double b = std::stod(sb, &pos_b);
        if (pos_a != sa.size() || pos_b != sb.size())
            throw std::invalid_argument("make_drift: malformed linear drift coefficients");
        return DriftFunction{tag, [a, b](double u) { return a * u + b; }, std::abs(a)};
    }
    throw std::invalid_argument("make_drift: unknown drift tag \"" + tag + "\"");
}

}  // namespace fracwave
