#include "thetadiv/fixtures.hpp"

#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cmath>
#include <cstdio>
#include <string>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(THETA_ETA_CLI_PATH) + " " + args + " 2>/dev/null";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

}  // namespace

TEST_CASE("cli eval basics") {
    const RunResult r = run_cli("eval --n 1 --tau i --z 0");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["value"][0].get<double>() == doctest::Approx(1.0864348112).epsilon(1e-9));
    CHECK(std::abs(j["value"][1].get<double>()) < 1e-12);
    CHECK(j["terms_summed"].get<int>() > 0);
    CHECK(j["error_bound"].get<double>() <= 1.1e-12);
}

TEST_CASE("cli eval odd characteristic at the origin") {
    const RunResult r = run_cli("eval --n 2 --tau iI2 --z 0,0 --char odd:0");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(std::abs(j["value"][0].get<double>()) < 1e-12);
    CHECK(std::abs(j["value"][1].get<double>()) < 1e-12);
}

TEST_CASE("cli eval jet output") {
    const RunResult r = run_cli("eval --n 2 --tau iI2+0.1S --z 0.1,0.2+0.1i --jet");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["gradient"].size() == 2);
    CHECK(j["hessian"].size() == 2);
    // symmetric hessian in the emitted JSON
    CHECK(j["hessian"][0][1] == j["hessian"][1][0]);
}

TEST_CASE("cli rejects malformed input with exit 2") {
    // Asymmetric tau names the violated invariant.
    CHECK(run_cli("eval --n 2 --tau [[[0,1],[0.2,0]],[[0.1,0],[0,1]]] --z 0,0").exit_code == 2);
    // Imaginary part not positive definite.
    CHECK(run_cli("eval --n 1 --tau [[[1,-1]]] --z 0").exit_code == 2);
    // Unknown suite.
    CHECK(run_cli("verify nonsense").exit_code == 2);
    // Epsilon outside the supported window.
    CHECK(run_cli("eval --n 1 --tau i --z 0 --eps 1e-20").exit_code == 2);
    // Unparseable z.
    CHECK(run_cli("eval --n 1 --tau i --z what").exit_code == 2);
}

TEST_CASE("cli reports numeric failure with exit 3") {
    // Deep in the imaginary direction the raw value overflows double range.
    CHECK(run_cli("eval --n 1 --tau i --z 0+30i").exit_code == 3);
}

TEST_CASE("cli verify exit code tracks the report") {
    const RunResult r = run_cli("verify jacobi --samples 5");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["pass"].get<bool>());
    CHECK(j["max_residual"].get<double>() < 1e-10);
    CHECK(j["suite"] == "jacobi");
    CHECK(j["failures"].empty());
}

TEST_CASE("cli weierstrass") {
    const RunResult ok = run_cli("weierstrass --tau iI2+0.1S");
    CHECK(ok.exit_code == 0);
    const auto j = nlohmann::json::parse(ok.out);
    REQUIRE(j["points"].size() == 6);
    for (const auto& p : j["points"]) {
        CHECK(p["theta_abs"].get<double>() < 1e-8);
        CHECK(p["eta_abs_scaled"].get<double>() < 1e-8);
    }

    CHECK(run_cli("weierstrass --tau block").exit_code == 4);

    // No randomness in this path: seeds do not change the bytes.
    const RunResult a = run_cli("weierstrass --tau iI2+0.1S --seed 1");
    const RunResult b = run_cli("weierstrass --tau iI2+0.1S --seed 99");
    CHECK(a.out == b.out);
}

TEST_CASE("cli determinism: same command, same bytes") {
    const std::string cmd = "verify quasiperiod --n 1 --samples 10 --seed 7";
    const RunResult a = run_cli(cmd);
    const RunResult b = run_cli(cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());

    const RunResult c = run_cli("verify eta-lemmas --samples 20 --seed 3");
    const RunResult d = run_cli("verify eta-lemmas --samples 20 --seed 3");
    CHECK(c.exit_code == 0);
    CHECK(c.out == d.out);
}

TEST_CASE("cli quiet mode suppresses output") {
    const RunResult r = run_cli("--quiet verify jacobi --samples 3");
    CHECK(r.exit_code == 0);
    CHECK(r.out.empty());
}

TEST_CASE("shipped fixtures file agrees with the built-ins") {
    const auto table = thetadiv::load_fixtures_file(THETA_ETA_FIXTURES_PATH);
    CHECK(table.size() >= 8);
    for (const auto& [name, tau] : table) {
        const std::string builtin_name = (name == "block-1-2") ? "block" : name;
        const auto b = thetadiv::builtin_fixture(builtin_name, tau.n());
        REQUIRE(b.has_value());
        for (int i = 0; i < tau.n(); ++i)
            for (int j = 0; j < tau.n(); ++j) CHECK(tau(i, j) == (*b)(i, j));
    }

    // The file is also usable through the CLI.
    const RunResult r = run_cli(std::string("eval --n 2 --tau iI2 --fixtures ") +
                                THETA_ETA_FIXTURES_PATH + " --z 0,0");
    CHECK(r.exit_code == 0);
}
