// End-to-end checks of the CLI binary: output schema, worked values, exit
// codes and byte-for-byte determinism. The binary path arrives via the
// TSHARP_CLI environment variable set by ctest.

#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    const char* bin = std::getenv("TSHARP_CLI");
    REQUIRE(bin != nullptr);
    const std::string err_path = "/tmp/tsharp_cli_stderr.txt";
    const std::string cmd = env_prefix + "'" + std::string(bin) + "' " + args + " 2>" + err_path;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult res;
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, n);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream err_file(err_path);
    std::stringstream ss;
    ss << err_file.rdbuf();
    res.err = ss.str();
    return res;
}

} // namespace

TEST_CASE("expand reproduces the worked ln(2) numbers and exits 0") {
    const RunResult res = run_cli("expand --fn log1p --a 0 --b 1 --n 2 --order 2");
    CHECK(res.exit_code == 0);
    const json doc = json::parse(res.out);
    CHECK(std::abs(doc["estimate"].get<double>() - 1061.0 / 1536.0) <= 1e-13);
    CHECK(doc["remainder_hi"].get<double>() == 0.009765625);
    CHECK(doc["satisfied"] == true);
    CHECK(res.out.find("\"estimate\":0.6907552083333") != std::string::npos);
    CHECK(res.out.find("\"remainder_hi\":0.009765625") != std::string::npos);
}

TEST_CASE("expand variants: classical and open") {
    const RunResult classical = run_cli("expand --fn log1p --a 0 --b 1 --variant classical");
    CHECK(classical.exit_code == 0);
    const json cdoc = json::parse(classical.out);
    CHECK(cdoc["estimate"].get<double>() == 0.5);
    CHECK(cdoc["rule"] == "classical");
    const RunResult open = run_cli("expand --fn log1p --a 0 --b 1 --n 2 --variant open");
    CHECK(open.exit_code == 0);
    CHECK(json::parse(open.out)["rule"] == "second_order_open");
    const RunResult first = run_cli("expand --fn log1p --a 0 --b 1 --n 1 --order 1");
    CHECK(first.exit_code == 0);
    CHECK(json::parse(first.out)["estimate"].get<double>() == 0.75);
}

TEST_CASE("quad: tight x^4 case has error equal to the c4 bound") {
    const RunResult res = run_cli("quad --fn pow:p=4,a0=0 --a 0 --b 1 --rule simpson --bound c4");
    CHECK(res.exit_code == 0);
    const json doc = json::parse(res.out);
    CHECK(std::abs(doc["abs_error"].get<double>() - 1.0 / 120.0) <= 1e-14);
    CHECK(std::abs(doc["bound"].get<double>() - 1.0 / 120.0) <= 1e-14);
    CHECK(doc["satisfied"] == true);
}

TEST_CASE("quad: mismatched rule/bound pairing is reported as a violation, exit 1") {
    // the trapezoid-corrected rule's error on x^4 exceeds the Simpson c4 bound
    const RunResult res =
        run_cli("quad --fn pow:p=4,a0=0 --a 0 --b 1 --rule cheng_sun --bound c4");
    CHECK(res.exit_code == 1);
    const json doc = json::parse(res.out);
    CHECK(doc["satisfied"] == false);
}

TEST_CASE("quad sweep emits one row per panel count") {
    const RunResult res = run_cli("quad --fn exp --a 0 --b 1 --rule simpson --panels 1,2,4,8");
    CHECK(res.exit_code == 0);
    const json arr = json::parse(res.out);
    REQUIRE(arr.is_array());
    CHECK(arr.size() == 4);
    CHECK(std::abs(arr[0]["empirical_order"].get<double>() - 4.0) <= 0.2);
}

TEST_CASE("interp runs the battery entry end to end") {
    const RunResult res = run_cli("interp --fn log1p --a 0 --b 1 --grid 1001");
    CHECK(res.exit_code == 0);
    const json doc = json::parse(res.out);
    CHECK(doc["satisfied_p2"] == true);
    CHECK(doc["satisfied_corrected"] == true);
}

TEST_CASE("verify runs the full battery, exit 0") {
    const RunResult res = run_cli("verify --seed 7");
    CHECK(res.exit_code == 0);
    const json doc = json::parse(res.out);
    CHECK(doc["all_satisfied"] == true);
    CHECK(doc["criteria"].size() == 10);
}

TEST_CASE("bench emits the full table in CSV") {
    const RunResult res = run_cli("bench --format csv");
    CHECK(res.exit_code == 0);
    int lines = 0;
    for (char ch : res.out)
        if (ch == '\n') ++lines;
    CHECK(lines == 1 + 27);
}

TEST_CASE("identical invocations produce byte-identical output") {
    const std::string args = "verify --seed 11 --format csv";
    const RunResult a = run_cli(args);
    const RunResult b = run_cli(args);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    const RunResult c = run_cli("expand --fn pow:p=3.5,a0=-1 --a -1 --b 1 --n 4");
    const RunResult d = run_cli("expand --fn pow:p=3.5,a0=-1 --a -1 --b 1 --n 4");
    CHECK(c.out == d.out);
}

TEST_CASE("usage and evaluation errors exit 2 with a diagnostic on stderr") {
    const RunResult unknown_fn = run_cli("expand --fn sinh --a 0 --b 1");
    CHECK(unknown_fn.exit_code == 2);
    CHECK(unknown_fn.err.find("error:") != std::string::npos);
    const RunResult bad_interval = run_cli("expand --fn exp --a 2 --b 1");
    CHECK(bad_interval.exit_code == 2);
    const RunResult out_of_domain = run_cli("quad --fn log1p --a -3 --b 1 --rule simpson");
    CHECK(out_of_domain.exit_code == 2);
    const RunResult bad_flag = run_cli("expand --fn exp --a 0 --b 1 --order 7");
    CHECK(bad_flag.exit_code == 2);
    const RunResult no_cmd = run_cli("");
    CHECK(no_cmd.exit_code == 2);
}

TEST_CASE("TAYLOR_SHARP_TOL must be a nonnegative number when set") {
    const RunResult bad = run_cli("expand --fn exp --a 0 --b 1", "TAYLOR_SHARP_TOL=abc ");
    CHECK(bad.exit_code == 2);
    const RunResult ok = run_cli("expand --fn exp --a 0 --b 1", "TAYLOR_SHARP_TOL=1e-10 ");
    CHECK(ok.exit_code == 0);
}
