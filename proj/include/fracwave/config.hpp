#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracwave/convergence.hpp"

namespace fracwave {

/// Raised when a config file is missing or malformed; the message names the
/// offending key.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, sep)) out.push_back(trim(item));
    return out;
}

}  // namespace detail

/// Flat key=value config, one pair per line, '#' starts a comment.
/// Required keys: alpha, hurst, sigma, T, steps, modes, trajectories, seed, f.
/// Optional: u0, v0 (mode:coeff pairs, default zero), workers (default auto),
/// noise ("fbm" or "off", default "fbm").
class ConfigFile {
public:
    static ConfigFile parse_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config file: " + path);
        std::stringstream buf;
        buf << in.rdbuf();
        return parse_text(buf.str());
    }

    static ConfigFile parse_text(const std::string& text) {
        ConfigFile cfg;
        std::istringstream in(text);
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            line = detail::trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": expected key=value");
            const std::string key = detail::trim(line.substr(0, eq));
            const std::string value = detail::trim(line.substr(eq + 1));
            if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) +
                                               ": empty key");
            cfg.values_[key] = value;
        }
        return cfg;
    }

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    const std::string& get(const std::string& key) const {
        const auto it = values_.find(key);
        if (it == values_.end()) throw ConfigError("missing config key: " + key);
        return it->second;
    }

    double get_double(const std::string& key) const {
        return parse_number<double>(key, get(key));
    }
    std::uint64_t get_uint(const std::string& key) const {
        return parse_number<std::uint64_t>(key, get(key));
    }

    const std::map<std::string, std::string>& values() const { return values_; }

    /// Assemble the experiment description; validates every field.
    ExperimentConfig to_experiment() const {
        ExperimentConfig e;
        e.alpha = get_double("alpha");
        e.hurst = get_double("hurst");
        e.sigma = get_double("sigma");
        e.final_time = get_double("T");
        e.modes = static_cast<Eigen::Index>(get_uint("modes"));
        e.trajectories = get_uint("trajectories");
        e.base_seed = get_uint("seed");
        e.f_tag = get("f");
        make_drift(e.f_tag);  // reject unknown tags up front

        e.step_counts.clear();
        for (const std::string& s : detail::split(get("steps"), ','))
            if (!s.empty()) e.step_counts.push_back(parse_number<std::size_t>("steps", s));

        e.u0 = has("u0") ? parse_modal("u0", get("u0")) : ModalSpec{};
        e.v0 = has("v0") ? parse_modal("v0", get("v0")) : ModalSpec{};
        e.workers = has("workers") ? get_uint("workers") : 0;
        if (has("noise")) {
            const std::string& n = get("noise");
            if (n == "fbm")
                e.noise = true;
            else if (n == "off")
                e.noise = false;
            else
                throw ConfigError("config key noise: expected \"fbm\" or \"off\"");
        }

        try {
            e.validate();
        } catch (const std::invalid_argument& err) {
            throw ConfigError(err.what());
        }
        return e;
    }

private:
    template <typename T>
    static T parse_number(const std::string& key, const std::string& value) {
        std::istringstream in(value);
        T out{};
        in >> out;
        if (in.fail() || !(in >> std::ws).eof())
            throw ConfigError("config key " + key + ": cannot parse \"" + value + "\"");
        return out;
    }

    static ModalSpec parse_modal(const std::string& key, const std::string& value) {
        ModalSpec spec;
        if (detail::trim(value).empty()) return spec;
        for (const std::string& item : detail::split(value, ',')) {
            const auto colon = item.find(':');
            if (colon == std::string::npos)
                throw ConfigError("config key " + key + ": expected mode:coeff pairs");
            spec.emplace_back(parse_number<Eigen::Index>(key, detail::trim(item.substr(0, colon))),
                              parse_number<double>(key, detail::trim(item.substr(colon + 1))));
        }
        return spec;
    }

    std::map<std::string, std::string> values_;
};

}  // namespace fracwave
