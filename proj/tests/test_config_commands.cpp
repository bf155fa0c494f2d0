#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "orlicz/commands.hpp"
#include "orlicz/errors.hpp"
#include "orlicz/run_config.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace orlicz;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "orlicz_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

RunConfig quiet_defaults() {
    RunConfig cfg;
    cfg.pair_count = 16;
    cfg.mc_count = 2000;
    cfg.grid_count = 64;
    cfg.sobolev_grid = 256;
    cfg.sobolev_mc = 1000;
    return cfg;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(ORLICZ_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    return WEXITSTATUS(rc);
}

} // namespace

TEST_CASE("serialize then parse is the identity") {
    RunConfig cfg;
    cfg.n = 3;
    cfg.norm = "lp:2.5";
    cfg.radius = 0.75;
    cfg.modulus = "power:0.5";
    cfg.phi = "power:3";
    cfg.k_max = 77;
    cfg.seed = 987654321;
    cfg.out_dir = "some/dir";
    std::istringstream in(cfg.serialize());
    const RunConfig back = RunConfig::parse(in);
    CHECK(back == cfg);
    // and once more through the round trip
    std::istringstream in2(back.serialize());
    CHECK(RunConfig::parse(in2) == cfg);
}

TEST_CASE("parser accepts comments and rejects malformed input") {
    std::istringstream ok("# comment\n[space]\nn = 2  # trailing\n\n[run]\njobs=3\n");
    const RunConfig cfg = RunConfig::parse(ok);
    CHECK(cfg.n == 2);
    CHECK(cfg.jobs == 3);

    std::istringstream bad_key("[space]\nwidth=2\n");
    CHECK_THROWS_AS(RunConfig::parse(bad_key), ConfigError);
    std::istringstream bad_line("[space]\nn 2\n");
    CHECK_THROWS_AS(RunConfig::parse(bad_line), ConfigError);
    std::istringstream bad_num("[space]\nn=two\n");
    CHECK_THROWS_AS(RunConfig::parse(bad_num), ConfigError);
}

TEST_CASE("overrides and validation ranges") {
    RunConfig cfg;
    cfg.apply_override("solver.k_max=50");
    CHECK(cfg.k_max == 50);
    cfg.apply_override("space.norm=l2");
    CHECK(cfg.norm == "l2");
    CHECK_THROWS_AS(cfg.apply_override("nosection"), ConfigError);
    CHECK_THROWS_AS(cfg.apply_override("space.bogus=1"), ConfigError);

    RunConfig bad;
    bad.n = 9;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = RunConfig{};
    bad.phi = "power:1";
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = RunConfig{};
    bad.modulus = "power:1.5";
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = RunConfig{};
    bad.norm = "l7";
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = RunConfig{};
    bad.radius = -1.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("cmd_conjugate writes the analytic table") {
    RunConfig cfg = quiet_defaults();
    cfg.phi = "power:3";
    cfg.out_dir = fresh_dir("conjugate").string();
    std::ostringstream diag;
    CHECK(cmd_conjugate(cfg, diag) == kExitOk);
    const std::string csv = slurp(fs::path(cfg.out_dir) / "conjugate.csv");
    CHECK(csv.rfind("x,phi,psi,young_gap\n", 0) == 0);
    // spot-check one row against psi(x) = (2/3) x^{3/2}
    std::istringstream rows(csv);
    std::string line;
    std::getline(rows, line); // header
    int checked = 0;
    while (std::getline(rows, line)) {
        double x, phi_v, psi_v, gap;
        REQUIRE(std::sscanf(line.c_str(), "%lg,%lg,%lg,%lg", &x, &phi_v, &psi_v, &gap) == 4);
        CHECK(psi_v == doctest::Approx(2.0 / 3.0 * std::pow(x, 1.5)).epsilon(1e-10));
        CHECK(gap >= -1e-9 * (1.0 + phi_v + psi_v));
        ++checked;
    }
    CHECK(checked == 50);
}

TEST_CASE("cmd_partition reports terminal and truncated runs") {
    RunConfig cfg = quiet_defaults();
    cfg.out_dir = fresh_dir("part_term").string();
    std::ostringstream diag;
    CHECK(cmd_partition(cfg, diag) == kExitOk);
    CHECK(diag.str().find("terminal_m=0") != std::string::npos);

    cfg.modulus = "power:0.5";
    cfg.k_max = 5;
    cfg.out_dir = fresh_dir("part_trunc").string();
    std::ostringstream diag2;
    CHECK(cmd_partition(cfg, diag2) == kExitOk);
    CHECK(diag2.str().find("truncated") != std::string::npos);
    const std::string csv = slurp(fs::path(cfg.out_dir) / "partition.csv");
    CHECK(csv.find("0,1,I\n") != std::string::npos);
    CHECK(csv.find("1,0.5,I\n") != std::string::npos);
}

TEST_CASE("cmd_bounds exit codes and summary") {
    RunConfig cfg = quiet_defaults();
    cfg.out_dir = fresh_dir("bounds_ok").string();
    std::ostringstream diag;
    CHECK(cmd_bounds(cfg, diag) == kExitOk);
    const std::string csv = slurp(fs::path(cfg.out_dir) / "bounds.csv");
    CHECK(csv.find("0.70710678119") != std::string::npos); // S_0 = 1/sqrt(2)
    const std::string json = slurp(fs::path(cfg.out_dir) / "bounds_summary.json");
    CHECK(json.find("\"finite\": true") != std::string::npos);

    cfg.n = 2;
    cfg.out_dir = fresh_dir("bounds_inf").string();
    std::ostringstream diag2;
    CHECK(cmd_bounds(cfg, diag2) == kExitInfinite);
    const std::string json2 = slurp(fs::path(cfg.out_dir) / "bounds_summary.json");
    CHECK(json2.find("\"finite\": false") != std::string::npos);

    // finite multi-level instance: n=1, alpha=1/2, p=3
    cfg = quiet_defaults();
    cfg.modulus = "power:0.5";
    cfg.phi = "power:3";
    cfg.out_dir = fresh_dir("bounds_alpha").string();
    std::ostringstream diag3;
    CHECK(cmd_bounds(cfg, diag3) == kExitOk);
}

TEST_CASE("cmd_simulate writes increments and the sup verdict") {
    RunConfig cfg = quiet_defaults();
    cfg.out_dir = fresh_dir("sim_ok").string();
    std::ostringstream diag;
    CHECK(cmd_simulate(cfg, diag) == kExitOk);
    const std::string json = slurp(fs::path(cfg.out_dir) / "sup_identity.json");
    CHECK(json.find("\"pass\": true") != std::string::npos);
    const std::string csv = slurp(fs::path(cfg.out_dir) / "increments.csv");
    CHECK(csv.rfind("pair,s0,t0,d,estimate,stderr\n", 0) == 0);

    cfg.n = 2;
    cfg.out_dir = fresh_dir("sim_inf").string();
    std::ostringstream diag2;
    CHECK(cmd_simulate(cfg, diag2) == kExitInfinite);
}

TEST_CASE("cmd_verify_sobolev runs the corpus") {
    RunConfig cfg = quiet_defaults();
    cfg.n = 2;
    cfg.norm = "l2";
    cfg.phi = "power:3";
    cfg.out_dir = fresh_dir("sobolev").string();
    std::ostringstream diag;
    CHECK(cmd_verify_sobolev(cfg, diag) == kExitOk);
    const std::string csv = slurp(fs::path(cfg.out_dir) / "sobolev.csv");
    CHECK(csv.find("linear,") != std::string::npos);
    CHECK(csv.find("piecewise_linear,") != std::string::npos);
}

TEST_CASE("reruns with the same configuration are byte-identical") {
    RunConfig cfg = quiet_defaults();
    cfg.modulus = "power:0.5";
    cfg.phi = "power:3";
    cfg.jobs = 1;
    cfg.out_dir = fresh_dir("repro_a").string();
    std::ostringstream diag;
    REQUIRE(cmd_bounds(cfg, diag) == kExitOk);
    REQUIRE(cmd_simulate(cfg, diag) == kExitOk);
    RunConfig cfg2 = cfg;
    cfg2.jobs = 4; // worker count must not change the bytes
    cfg2.out_dir = fresh_dir("repro_b").string();
    REQUIRE(cmd_bounds(cfg2, diag) == kExitOk);
    REQUIRE(cmd_simulate(cfg2, diag) == kExitOk);
    for (const char* name : {"bounds.csv", "bounds_summary.json", "increments.csv",
                             "sup_identity.json"}) {
        CHECK(slurp(fs::path(cfg.out_dir) / name) == slurp(fs::path(cfg2.out_dir) / name));
    }
}

TEST_CASE("config errors map to exit 2 without output") {
    RunConfig cfg = quiet_defaults();
    cfg.phi = "power:0.5"; // invalid exponent
    std::ostringstream diag;
    CHECK(cmd_bounds(cfg, diag) == kExitConfig);
    CHECK(diag.str().find("config error") != std::string::npos);
}

TEST_CASE("cli binary: subcommands, overrides, exit codes") {
    const fs::path dir = fresh_dir("cli");
    CHECK(run_cli("bounds --out " + (dir / "a").string()) == 0);
    CHECK(run_cli("bounds --out " + (dir / "b").string() + " --set space.n=2") == 10);
    CHECK(run_cli("bounds --out " + (dir / "c").string() + " --set model.phi=power:unparseable") == 2);
    CHECK(run_cli("bogus-subcommand") == 2);
    CHECK(run_cli("partition --out " + (dir / "d").string() +
                  " --set model.modulus=power:0.5 --set solver.k_max=4") == 0);
    // config file + override layering
    const fs::path cfg_path = dir / "run.cfg";
    {
        std::ofstream os(cfg_path);
        os << "[space]\nn=1\n[model]\nphi=power:3\n[mc]\nmc_count=500\npair_count=8\n";
    }
    CHECK(run_cli("simulate --config " + cfg_path.string() + " --out " + (dir / "e").string() +
                  " --seed 7 --jobs 2 --set mc.grid_count=32") == 0);
    CHECK(run_cli("verify-sobolev --out " + (dir / "f").string() +
                  " --set mc.sobolev_mc=400 --set mc.sobolev_grid=128") == 0);
}
