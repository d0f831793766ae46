#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace {

struct RunResult {
    int code;
    std::string out;
};

// Run the installed binary with output captured through a temp file.
RunResult run_cli(const std::string& args) {
    std::string path = "cli_test_out.tmp";
    std::string cmd = std::string(LATSLICE_CLI) + " " + args + " > " + path + " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    std::remove(path.c_str());
    return {WEXITSTATUS(rc), ss.str()};
}

}  // namespace

TEST_CASE("cli enumerate emits the 9 cube points as CSV") {
    auto r = run_cli("enumerate --body box:1,1");
    CHECK(r.code == 0);
    CHECK(r.out.find("# latslice") == 0);
    CHECK(r.out.find("c0,c1,x0,x1") != std::string::npos);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 11);  // banner + header + 9 rows
}

TEST_CASE("cli theta reports the known value and a tiny Poisson residual") {
    auto r = run_cli("theta --dim 1 --s 1");
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(std::abs(j["value"].get<double>() - 1.0864348112) < 1e-9);
    CHECK(j["poisson_residual"].get<double>() <= 1e-9);
    CHECK(std::abs(j["prob_zero"].get<double>() - 1.0 / 1.0864348112) < 1e-9);
}

TEST_CASE("cli slice-best reproduces the cross-polytope ratio") {
    auto r = run_cli("slice-best --body cross:1,1,1,1");
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["on_count"].get<long long>() == 7);
    CHECK(j["total"].get<long long>() == 9);
}

TEST_CASE("cli verify produces a full json report") {
    auto r = run_cli("verify --body box:1,1,1 --seed 3");
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["best_ratio_num"].get<long long>() == 9);
    CHECK(j["best_ratio_den"].get<long long>() == 27);
    CHECK(j["degenerate"].get<bool>() == false);
}

TEST_CASE("cli refuses randomized commands without a seed") {
    CHECK(run_cli("verify --body box:1,1").code == 2);
    CHECK(run_cli("suite").code == 2);
}

TEST_CASE("cli rejects malformed body specs with exit code 2") {
    CHECK(run_cli("enumerate --body ball:2").code == 2);
    CHECK(run_cli("enumerate --body no_such_file.json").code == 2);
}

TEST_CASE("cli sample prints the zero-frequency footer") {
    auto r = run_cli("sample --dim 2 --s 1 --n 2000 --seed 9");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("# zero_frequency=") != std::string::npos);
    CHECK(r.out.find("# prob_zero=") != std::string::npos);
}
