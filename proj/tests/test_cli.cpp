#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>

#include <json.hpp>

#ifndef BOHRLAB_CLI_PATH
#error "BOHRLAB_CLI_PATH must point at the CLI binary"
#endif

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    const std::string command = std::string(BOHRLAB_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    std::array<char, 4096> buffer{};
    std::size_t got = 0;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
        output.append(buffer.data(), got);
    }
    const int status = pclose(pipe);
    return RunResult{WIFEXITED(status) ? WEXITSTATUS(status) : -1, output};
}

}  // namespace

TEST_CASE("radius subcommand reproduces the known closed forms") {
    const RunResult convex = run_cli("radius --thm 1 --alpha 1 --N 1 --m0 inf --format json");
    REQUIRE(convex.exit_code == 0);
    const auto j1 = nlohmann::json::parse(convex.output);
    CHECK(std::fabs(j1["reported_radius"].get<double>() - 1.0 / 3.0) <= 1e-10);
    CHECK(std::fabs(j1["closed_form"].get<double>() - 1.0 / 3.0) <= 1e-12);
    CHECK_FALSE(j1["capped"].get<bool>());
    CHECK(j1["residual"].get<double>() <= 1e-11);

    const RunResult slit = run_cli("radius --thm 1 --alpha 2 --N 1 --m0 inf --format json");
    REQUIRE(slit.exit_code == 0);
    const auto j2 = nlohmann::json::parse(slit.output);
    CHECK(std::fabs(j2["reported_radius"].get<double>() - 0.17157287525380990) <= 1e-10);

    const RunResult pole = run_cli("radius --thm 4 --p 0.5 --N 1 --m0 inf --format json");
    REQUIRE(pole.exit_code == 0);
    const auto j4 = nlohmann::json::parse(pole.output);
    CHECK(std::fabs(j4["root"].get<double>() - 0.14589803375031546) <= 1e-10);
    CHECK(j4["root"].get<double>() < 0.5);
    CHECK(j4["m1"].is_null());
    CHECK(j4["h"].is_null());
}

TEST_CASE("radius JSON round-trips bit-for-bit") {
    const RunResult run =
        run_cli("radius --thm 2 --alpha 1.5 --N 2 --m0 2 --m1 1 --m2 2 --format json");
    REQUIRE(run.exit_code == 0);
    const auto parsed = nlohmann::json::parse(run.output);
    const auto reparsed = nlohmann::json::parse(parsed.dump());
    for (const char* key : {"root", "reported_radius", "residual", "closed_form"}) {
        if (parsed[key].is_null()) {
            CHECK(reparsed[key].is_null());
            continue;
        }
        const double a = parsed[key].get<double>();
        const double b = reparsed[key].get<double>();
        CHECK(std::memcmp(&a, &b, sizeof(double)) == 0);
    }
}

TEST_CASE("coeffs subcommand emits the Koebe and geometric tables") {
    const RunResult koebe = run_cli("coeffs --alpha 2 --n-max 5");
    REQUIRE(koebe.exit_code == 0);
    CHECK(koebe.output == "n,coefficient\n1,1\n2,2\n3,3\n4,4\n5,5\n");

    const RunResult convex = run_cli("coeffs --alpha 1 --n-max 5");
    REQUIRE(convex.exit_code == 0);
    CHECK(convex.output == "n,coefficient\n1,1\n2,1\n3,1\n4,1\n5,1\n");

    const RunResult pole = run_cli("coeffs --p 0.5 --n-min 2 --n-max 2");
    REQUIRE(pole.exit_code == 0);
    CHECK(pole.output == "n,coefficient\n2,2.5\n");
}

TEST_CASE("scan subcommand flags the root row") {
    const RunResult scan =
        run_cli("scan --thm 1 --alpha 1 --N 1 --m0 inf --points 101 --x-max 0.5");
    REQUIRE(scan.exit_code == 0);
    CHECK(scan.output.rfind("x,value,is_root\n", 0) == 0);
    CHECK(scan.output.find(",1\n") != std::string::npos);

    // the flagged row sits between the 0.33 and 0.335 grid rows
    const auto root_pos = scan.output.find("0.33333333333");
    const auto before = scan.output.find("\n0.33000000000");
    const auto after = scan.output.find("\n0.33500000000");
    REQUIRE(root_pos != std::string::npos);
    REQUIRE(before != std::string::npos);
    REQUIRE(after != std::string::npos);
    CHECK(before < root_pos);
    CHECK(root_pos < after);

    const RunResult pole_scan =
        run_cli("scan --thm 4 --p 0.5 --N 1 --m0 inf --points 30 --x-max 0.145");
    REQUIRE(pole_scan.exit_code == 0);
    // every grid value below the radius is negative
    std::size_t pos = pole_scan.output.find('\n') + 1;
    while (pos < pole_scan.output.size()) {
        const std::size_t comma = pole_scan.output.find(',', pos);
        const std::size_t next = pole_scan.output.find('\n', pos);
        const std::string value = pole_scan.output.substr(comma + 1, next - comma - 1);
        if (value.rfind(",1", value.size() - 2) == std::string::npos) {
            CHECK(value.find("-") == 0);
        }
        pos = next + 1;
    }
}

TEST_CASE("verify subcommand exit codes and determinism") {
    const std::string flags = "verify --samples 20 --seed 9 --theta-grid 16";
    const RunResult first = run_cli(flags);
    REQUIRE(first.exit_code == 0);
    const RunResult second = run_cli(flags);
    CHECK(first.output == second.output);

    const auto report = nlohmann::json::parse(first.output);
    CHECK(report["passed"].get<bool>());
    CHECK(report["worst_by_check"].contains("tail_domination"));
    CHECK(report["worst_by_check"].contains("sharpness_below"));

    // pushing the probe radius past the computed radius must fail on the
    // extremal rows
    const RunResult outside = run_cli("verify --samples 5 --seed 9 --radius-scale 1.05");
    CHECK(outside.exit_code == 1);
    const auto failing = nlohmann::json::parse(outside.output);
    CHECK_FALSE(failing["passed"].get<bool>());
    CHECK(failing["violations"].size() > 0);
}

TEST_CASE("invalid parameters exit with code 2") {
    CHECK(run_cli("radius --thm 1 --p 0.5 --N 1").exit_code == 2);
    CHECK(run_cli("radius --thm 4 --alpha 1.5 --N 1").exit_code == 2);
    CHECK(run_cli("radius --thm 3 --alpha 1.5").exit_code == 2);
    CHECK(run_cli("radius --thm 1 --alpha 0.5").exit_code == 2);
    CHECK(run_cli("verify --samples 0").exit_code == 2);
    CHECK(run_cli("coeffs --alpha 2 --p 0.5 --n-max 4").exit_code == 2);
    CHECK(run_cli("coeffs --alpha 2 --n-max 0").exit_code == 2);
    CHECK(run_cli("nonsense").exit_code == 2);
}

TEST_CASE("selftest passes and the negative control fails") {
    CHECK(run_cli("selftest").exit_code == 0);
    const RunResult tampered = run_cli("selftest --negative-control");
    CHECK(tampered.exit_code == 1);
    CHECK(tampered.output.find("FAIL") != std::string::npos);
}
