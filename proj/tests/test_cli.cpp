// Exercises the installed command line surface end to end: subcommands,
// exit codes, report determinism, and artifact dumps. The binary path comes
// from the FRECHET_CLI environment variable set by ctest.

#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

std::string cli() {
    const char* env = std::getenv("FRECHET_CLI");
    REQUIRE(env != nullptr);
    return env;
}

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string out_path = "/tmp/frechet_cli_stdout.txt";
    const std::string cmd = cli() + " " + args + " > " + out_path + " 2>/dev/null";
    const int rc = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WEXITSTATUS(rc);
    std::ifstream in(out_path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    r.out = ss.str();
    return r;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("approx on identical curves returns zero with exit 0") {
    write_file("/tmp/fr_id.csv", "0,0\n1,0\n2,1\n");
    auto r = run("approx /tmp/fr_id.csv /tmp/fr_id.csv --eps 0.25");
    CHECK(r.exit_code == 0);
    CHECK(std::stod(r.out) == 0.0);
}

TEST_CASE("decide on translated segments") {
    write_file("/tmp/fr_a.csv", "0,0\n1,0\n");
    write_file("/tmp/fr_b.csv", "0,1\n1,1\n");
    auto gt = run("decide /tmp/fr_a.csv /tmp/fr_b.csv --r 0.1 --eps 0.25");
    CHECK(gt.exit_code == 0);
    CHECK(gt.out == "GT\n");
    auto le = run("decide /tmp/fr_a.csv /tmp/fr_b.csv --r 3 --eps 0.25");
    CHECK(le.out == "LE\n");
}

TEST_CASE("exit codes: usage 2, domain 1") {
    CHECK(run("nonsense").exit_code == 2);
    CHECK(run("decide onlyone").exit_code == 2);
    write_file("/tmp/fr_a.csv", "0,0\n1,0\n");
    // eps out of range -> domain error
    CHECK(run("approx /tmp/fr_a.csv /tmp/fr_a.csv --eps 0.75").exit_code == 1);
    // missing file -> domain error
    CHECK(run("approx /tmp/no_such_file.csv /tmp/fr_a.csv --eps 0.25").exit_code == 1);
    // malformed row -> parse error
    write_file("/tmp/fr_bad.csv", "0,0\n1,0,9\n");
    CHECK(run("exact /tmp/fr_bad.csv /tmp/fr_a.csv").exit_code == 1);
}

TEST_CASE("generate is byte-identical across runs") {
    auto r1 = run("generate --n 100 --c 8 --dim 2 --seed 7 --out /tmp/fr_g1.csv");
    auto r2 = run("generate --n 100 --c 8 --dim 2 --seed 7 --out /tmp/fr_g2.csv");
    CHECK(r1.exit_code == 0);
    CHECK(r2.exit_code == 0);
    CHECK(slurp("/tmp/fr_g1.csv") == slurp("/tmp/fr_g2.csv"));
    auto r3 = run("generate --n 100 --c 8 --dim 2 --seed 8 --out /tmp/fr_g3.csv");
    CHECK(slurp("/tmp/fr_g1.csv") != slurp("/tmp/fr_g3.csv"));
}

TEST_CASE("json reports are stable modulo wall time") {
    write_file("/tmp/fr_a.csv", "0,0\n1,0\n");
    write_file("/tmp/fr_b.csv", "0,1\n1,1\n");
    auto r1 = run("--json approx /tmp/fr_a.csv /tmp/fr_b.csv --eps 0.25");
    auto r2 = run("--json approx /tmp/fr_a.csv /tmp/fr_b.csv --eps 0.25");
    REQUIRE(r1.exit_code == 0);
    auto j1 = nlohmann::json::parse(r1.out);
    auto j2 = nlohmann::json::parse(r2.out);
    j1.erase("wall_time_ms");
    j2.erase("wall_time_ms");
    CHECK(j1 == j2);
    CHECK(j1["outcome"]["value"].get<double>() >= 1.0 - 1e-9);
    CHECK(j1["outcome"]["value"].get<double>() <= 1.25 + 1e-9);
}

TEST_CASE("witness and freespace dumps are valid JSON") {
    write_file("/tmp/fr_a.csv", "0,0\n1,0\n");
    write_file("/tmp/fr_b.csv", "0,1\n1,1\n");
    auto r = run(
        "approx /tmp/fr_a.csv /tmp/fr_b.csv --eps 0.25 --dump-alignment /tmp/fr_w.json");
    CHECK(r.exit_code == 0);
    auto w = nlohmann::json::parse(slurp("/tmp/fr_w.json"));
    CHECK(w.contains("pairs"));
    CHECK(w["leash"].get<double>() <= std::stod(r.out) + 1e-7);

    auto d = run(
        "decide /tmp/fr_a.csv /tmp/fr_b.csv --r 1.5 --eps 0.25 "
        "--dump-freespace /tmp/fr_fs.json");
    CHECK(d.exit_code == 0);
    auto fs = nlohmann::json::parse(slurp("/tmp/fr_fs.json"));
    CHECK(fs["rows"].get<int>() == 1);
    CHECK(fs["cols"].get<int>() == 1);
}

TEST_CASE("simplify and packedness subcommands") {
    write_file("/tmp/fr_s.csv", "0,0\n0.4,0\n1,0\n1.2,0\n");
    auto r = run("--json simplify /tmp/fr_s.csv --mu 0.5 --out /tmp/fr_s_out.csv");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["outcome"]["vertices"].get<int>() == 3);
    CHECK(slurp("/tmp/fr_s_out.csv").find("1.2") != std::string::npos);

    auto p = run("--json packedness /tmp/fr_s.csv");
    CHECK(p.exit_code == 0);
    auto jp = nlohmann::json::parse(p.out);
    CHECK(jp["outcome"]["value"].get<double>() > 0.0);
}
