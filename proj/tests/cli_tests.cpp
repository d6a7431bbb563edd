// End-to-end tests of the command-line tool. The binary path arrives as the
// first program argument; everything runs in a scratch directory under TMPDIR.
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

namespace {

std::string g_cli;
std::filesystem::path g_dir;

int run(const std::string& args) {
    const std::string cmd = g_cli + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::filesystem::path write_config(const std::string& name, const std::string& text) {
    const auto path = g_dir / name;
    std::ofstream out(path);
    out << text;
    return path;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/// CSV content without '#' manifest lines (those carry wall-clock times).
std::string body_of(const std::filesystem::path& path) {
    std::istringstream in(slurp(path));
    std::string line, body;
    while (std::getline(in, line))
        if (line.empty() || line[0] != '#') body += line + "\n";
    return body;
}

const std::string kSmallConfig =
    "alpha = 0.8\nhurst = 0.4\nsigma = 0.05\nT = 0.2\nsteps = 4,8,16\n"
    "modes = 8\ntrajectories = 8\nseed = 7\nf = paper\nu0 = 1:0.25\nv0 = 3:0.5\n";

}  // namespace

TEST_CASE("version and argument errors") {
    CHECK(run("--version") == 0);
    CHECK(run("") == 2);
    CHECK(run("frobnicate") == 2);
    CHECK(run("convergence") == 2);  // missing config argument
}

TEST_CASE("convergence: config errors exit 2") {
    CHECK(run("convergence " + (g_dir / "does_not_exist.cfg").string()) == 2);
    const auto bad = write_config("missing_sigma.cfg",
                                  "alpha=0.8\nhurst=0.4\nT=0.2\nsteps=4,8\nmodes=8\n"
                                  "trajectories=4\nseed=1\nf=paper\n");
    CHECK(run("convergence " + bad.string()) == 2);
}

TEST_CASE("convergence: writes a manifest plus CSV table") {
    const auto cfg = write_config("small.cfg", kSmallConfig);
    const auto out = g_dir / "rates.csv";
    CHECK(run("convergence " + cfg.string() + " -o " + out.string()) == 0);
    const std::string text = slurp(out);
    CHECK(text.find("# tool_version: ") != std::string::npos);
    CHECK(text.find("# base_seed: 7") != std::string::npos);
    CHECK(text.find("N,error,stderr,rate,predicted_rate,kappa") != std::string::npos);
    CHECK(text.find("\n4,") != std::string::npos);
    CHECK(text.find("\n8,") != std::string::npos);
}

TEST_CASE("convergence: seed override changes results, reruns are identical") {
    const auto cfg = write_config("small.cfg", kSmallConfig);
    const auto out1 = g_dir / "s1.csv";
    const auto out2 = g_dir / "s2.csv";
    const auto out3 = g_dir / "s3.csv";
    CHECK(std::system((
              "SPDE_SEED=11 " + g_cli + " convergence " + cfg.string() + " -o " +
              out1.string() + " >/dev/null 2>&1").c_str()) == 0);
    CHECK(std::system((
              "SPDE_SEED=12 " + g_cli + " convergence " + cfg.string() + " -o " +
              out2.string() + " >/dev/null 2>&1").c_str()) == 0);
    CHECK(std::system((
              "SPDE_SEED=11 " + g_cli + " convergence " + cfg.string() + " -o " +
              out3.string() + " >/dev/null 2>&1").c_str()) == 0);
    CHECK(body_of(out1) != body_of(out2));
    CHECK(body_of(out1) == body_of(out3));
    const int rc = std::system(("SPDE_SEED=nope " + g_cli + " convergence " + cfg.string() +
                                " >/dev/null 2>&1").c_str());
    CHECK(WEXITSTATUS(rc) == 2);
}

TEST_CASE("fbm-check: passes for valid H, exits 2 for invalid H") {
    CHECK(run("fbm-check --hurst 0.5 --grid-size 4 --paths 2000") == 0);
    CHECK(run("fbm-check --hurst 0.3 --grid-size 4 --paths 2000") == 0);
    CHECK(run("fbm-check --hurst 1.5") == 2);
    CHECK(run("fbm-check --hurst 0") == 2);
    CHECK(run("fbm-check") == 2);  // --hurst is required
}

TEST_CASE("solve: noise-free zero-drift run matches the exact rotation") {
    const auto cfg = write_config("exact.cfg",
                                  "alpha = 0.8\nhurst = 0.4\nsigma = 0.05\nT = 0.2\n"
                                  "steps = 4,8\nmodes = 4\ntrajectories = 2\nseed = 1\n"
                                  "f = zero\nu0 = 1:0.25\nnoise = off\n");
    const auto out = g_dir / "solution.csv";
    CHECK(run("solve " + cfg.string() + " -o " + out.string()) == 0);

    std::istringstream in(body_of(out));
    std::string line;
    std::getline(in, line);
    CHECK(line == "t,x,u");
    std::getline(in, line);  // first sample: t = T, x = 1/5
    std::istringstream row(line);
    std::string t_s, x_s, u_s;
    std::getline(row, t_s, ',');
    std::getline(row, x_s, ',');
    std::getline(row, u_s, ',');
    const double mu1 = std::pow(std::numbers::pi * std::numbers::pi, 0.4);
    const double expect =
        0.25 * std::cos(mu1 * 0.2) * std::numbers::sqrt2 * std::sin(std::numbers::pi * 0.2);
    CHECK(std::stod(t_s) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(std::stod(x_s) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(std::stod(u_s) == doctest::Approx(expect).epsilon(1e-9));
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: cli_tests <path-to-cli-binary> [doctest args]\n");
        return 1;
    }
    g_cli = argv[1];
    g_dir = std::filesystem::temp_directory_path() /
            ("fracwave_cli_tests_" + std::to_string(::getpid()));
    std::filesystem::create_directories(g_dir);

    doctest::Context ctx;
    ctx.applyCommandLine(argc - 1, argv + 1);
    const int rc = ctx.run();
    std::filesystem::remove_all(g_dir);
    return rc;
}
