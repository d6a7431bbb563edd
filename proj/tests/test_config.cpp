#include <doctest.h>

#include <string>

#include "fracwave/config.hpp"

using namespace fracwave;

namespace {

const std::string kFullConfig =
    "# benchmark run\n"
    "alpha = 0.8\n"
    "hurst = 0.4\n"
    "sigma = 0.05   # noise decay\n"
    "T = 0.2\n"
    "steps = 4,8,16,32\n"
    "modes = 256\n"
    "trajectories = 500\n"
    "seed = 1\n"
    "f = paper\n"
    "u0 = 1:0.25\n"
    "v0 = 3:0.5\n"
    "workers = 2\n";

}  // namespace

TEST_CASE("full config parses into an experiment") {
    const ExperimentConfig e = ConfigFile::parse_text(kFullConfig).to_experiment();
    CHECK(e.alpha == 0.8);
    CHECK(e.hurst == 0.4);
    CHECK(e.sigma == 0.05);
    CHECK(e.final_time == 0.2);
    CHECK(e.step_counts == std::vector<std::size_t>{4, 8, 16, 32});
    CHECK(e.modes == 256);
    CHECK(e.trajectories == 500);
    CHECK(e.base_seed == 1);
    CHECK(e.f_tag == "paper");
    REQUIRE(e.u0.size() == 1);
    CHECK(e.u0[0].first == 1);
    CHECK(e.u0[0].second == 0.25);
    REQUIRE(e.v0.size() == 1);
    CHECK(e.v0[0].first == 3);
    CHECK(e.v0[0].second == 0.5);
    CHECK(e.workers == 2);
    CHECK(e.noise == true);
}

TEST_CASE("optional keys default sensibly") {
    const std::string minimal =
        "alpha=0.25\nhurst=0.1\nsigma=0.4\nT=0.2\nsteps=4,8\nmodes=16\n"
        "trajectories=10\nseed=3\nf=zero\n";
    const ExperimentConfig e = ConfigFile::parse_text(minimal).to_experiment();
    CHECK(e.u0.empty());
    CHECK(e.v0.empty());
    CHECK(e.workers == 0);
    CHECK(e.noise == true);
}

TEST_CASE("missing keys are named in the error") {
    const std::string no_sigma =
        "alpha=0.8\nhurst=0.4\nT=0.2\nsteps=4,8\nmodes=16\ntrajectories=10\nseed=1\nf=paper\n";
    try {
        (void)ConfigFile::parse_text(no_sigma).to_experiment();
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()) == "missing config key: sigma");
    }
}

TEST_CASE("comments, blank lines, and whitespace are tolerated") {
    const ConfigFile cfg = ConfigFile::parse_text("\n  # header\n  alpha =  0.8  # tail\n\n");
    CHECK(cfg.has("alpha"));
    CHECK(cfg.get_double("alpha") == 0.8);
    CHECK_FALSE(cfg.has("hurst"));
}

TEST_CASE("multi-mode initial data parses in order") {
    std::string text = kFullConfig;
    text += "u0 = 1:0.25, 5:-1.5\n";  // later line overrides
    const ExperimentConfig e = ConfigFile::parse_text(text).to_experiment();
    REQUIRE(e.u0.size() == 2);
    CHECK(e.u0[1].first == 5);
    CHECK(e.u0[1].second == -1.5);
}

TEST_CASE("malformed inputs raise ConfigError") {
    CHECK_THROWS_AS((void)ConfigFile::parse_text("alpha 0.8\n"), ConfigError);
    CHECK_THROWS_AS((void)ConfigFile::parse_text("= 0.8\n"), ConfigError);
    CHECK_THROWS_AS((void)ConfigFile::parse_text(kFullConfig + "noise = maybe\n").to_experiment(),
                    ConfigError);
    CHECK_THROWS_AS((void)ConfigFile::parse_text(kFullConfig + "modes = twelve\n").to_experiment(),
                    ConfigError);
    CHECK_THROWS_AS((void)ConfigFile::parse_text(kFullConfig + "u0 = 1\n").to_experiment(),
                    ConfigError);
    // semantic failures surface as ConfigError too
    CHECK_THROWS_AS((void)ConfigFile::parse_text(kFullConfig + "steps = 4,9\n").to_experiment(),
                    ConfigError);
    CHECK_THROWS_AS((void)ConfigFile::parse_text(kFullConfig + "hurst = 1.2\n").to_experiment(),
                    ConfigError);
    CHECK_THROWS_AS((void)ConfigFile::parse_text(kFullConfig + "f = unknown\n").to_experiment(),
                    std::invalid_argument);
}

TEST_CASE("noise can be switched off") {
    const ExperimentConfig e =
        ConfigFile::parse_text(kFullConfig + "noise = off\n").to_experiment();
    CHECK(e.noise == false);
}

TEST_CASE("nonexistent files are reported by path") {
    try {
        (void)ConfigFile::parse_file("/nonexistent/run.cfg");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("/nonexistent/run.cfg") != std::string::npos);
    }
}
