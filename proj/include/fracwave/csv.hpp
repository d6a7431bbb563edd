#pragma once

#include <cstdio>
#include <sstream>
#include <string>

#include "fracwave/convergence.hpp"

namespace fracwave {

inline constexpr const char* kToolVersion = "0.1.0";

/// Locale-proof number formatting: '.' decimal separator, 12 significant digits.
inline std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

inline std::string format_config_echo(const ExperimentConfig& c) {
    std::ostringstream out;
    out << "alpha=" << format_number(c.alpha) << " hurst=" << format_number(c.hurst)
        << " sigma=" << format_number(c.sigma) << " T=" << format_number(c.final_time)
        << " steps=";
    for (std::size_t k = 0; k < c.step_counts.size(); ++k)
        out << (k ? "," : "") << c.step_counts[k];
    out << " modes=" << c.modes << " trajectories=" << c.trajectories
        << " seed=" << c.base_seed << " f=" << c.f_tag;
    return out.str();
}

/// CSV body of an error table: fixed column order, deterministic bytes for a
/// given table. Rate and stderr fields are empty where undefined.
inline std::string convergence_csv_body(const ErrorTable& table) {
    std::ostringstream out;
    out << "N,error,stderr,rate,predicted_rate,kappa\n";
    for (const auto& row : table.rows) {
        out << row.steps << ',' << format_number(row.error) << ','
            << format_number(row.stderr_jack) << ',';
        if (row.rate) out << format_number(*row.rate);
        out << ',' << format_number(table.predicted_rate) << ',' << format_number(table.kappa)
            << '\n';
    }
    return out.str();
}

/// Manifest header lines ('#'-prefixed); the wall-clock field lives only here
/// so CSV bodies stay byte-identical across reruns.
inline std::string manifest_header(const ExperimentConfig& config, double wall_seconds) {
    std::ostringstream out;
    out << "# tool_version: " << kToolVersion << '\n';
    out << "# config: " << format_config_echo(config) << '\n';
    out << "# base_seed: " << config.base_seed << '\n';
    out << "# wall_clock_seconds: " << format_number(wall_seconds) << '\n';
    return out.str();
}

}  // namespace fracwave
