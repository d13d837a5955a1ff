// End-to-end checks of the command-line driver: exit codes, output shape,
// and byte-level determinism of the sample stream.

#include <gtest/gtest.h>

#include "json.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

const char *kCli = ABELSIM_CLI_PATH;
const char *kCircuitDir = ABELSIM_CIRCUIT_DIR;

struct RunResult {
    int exit_code = -1;
    std::string out;
};

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

fs::path temp_file(const std::string &name) {
    return fs::temp_directory_path() / ("abelsim_cli_test_" + name);
}

RunResult run_cli(const std::string &args) {
    fs::path out = temp_file("stdout.txt");
    std::string cmd = std::string(kCli) + " " + args + " > " + out.string() + " 2>&1";
    int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    return r;
}

std::string circuit(const std::string &name) {
    return (fs::path(kCircuitDir) / name).string();
}

fs::path write_temp_circuit(const std::string &name, const std::string &body) {
    fs::path p = temp_file(name);
    std::ofstream out(p, std::ios::binary);
    out << body;
    return p;
}

TEST(Cli, ValidatePrintsGroupChain) {
    RunResult r = run_cli("validate --circuit " + circuit("bell.json"));
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.out, "Z_2 x Z_2 -> Z_2 x Z_2 -> Z_2 x Z_2\n");
}

TEST(Cli, SimulateEmitsHeaderAndSamples) {
    fs::path out = temp_file("sim.jsonl");
    RunResult r = run_cli("simulate --circuit " + circuit("bell.json") +
                          " --count 5 --seed 3 --out " + out.string());
    ASSERT_EQ(r.exit_code, 0) << r.out;
    std::istringstream lines(slurp(out));
    std::string line;
    ASSERT_TRUE(std::getline(lines, line));
    Json header = Json::parse(line);
    ASSERT_TRUE(header.contains("support"));
    ASSERT_TRUE(header.contains("net"));
    EXPECT_EQ(header["support"]["x0"], Json::array({"0", "0"}));
    EXPECT_EQ(header["net"]["point_count"].get<std::string>(), "2");
    int samples = 0;
    while (std::getline(lines, line)) {
        Json s = Json::parse(line);
        ASSERT_TRUE(s.contains("sample"));
        std::vector<std::string> v = s["sample"].get<std::vector<std::string>>();
        ASSERT_EQ(v.size(), 2u);
        EXPECT_TRUE((v[0] == "0" && v[1] == "0") || (v[0] == "1" && v[1] == "1"));
        samples++;
    }
    EXPECT_EQ(samples, 5);
}

TEST(Cli, SimulateIsByteDeterministic) {
    fs::path a = temp_file("det_a.jsonl");
    fs::path b = temp_file("det_b.jsonl");
    std::string args = "simulate --circuit " + circuit("ghz.json") + " --count 64 --seed 11";
    ASSERT_EQ(run_cli(args + " --out " + a.string()).exit_code, 0);
    ASSERT_EQ(run_cli(args + " --out " + b.string()).exit_code, 0);
    std::string sa = slurp(a);
    EXPECT_FALSE(sa.empty());
    EXPECT_EQ(sa, slurp(b));

    fs::path c = temp_file("det_c.jsonl");
    ASSERT_EQ(run_cli("simulate --circuit " + circuit("ghz.json") +
                      " --count 64 --seed 12 --out " + c.string())
                  .exit_code,
              0);
    EXPECT_NE(sa, slurp(c));
}

TEST(Cli, ParseErrorsExitOne) {
    fs::path bad = write_temp_circuit("bad_json.json", "{not json");
    EXPECT_EQ(run_cli("validate --circuit " + bad.string()).exit_code, 1);

    fs::path zero_den = write_temp_circuit(
        "zero_den.json",
        R"({"group": [{"ZN": 2}], "input": ["1/0"], "gates": []})");
    RunResult r = run_cli("validate --circuit " + zero_den.string());
    EXPECT_EQ(r.exit_code, 1);
    EXPECT_NE(r.out.find("/input/0"), std::string::npos);

    EXPECT_EQ(run_cli("validate --circuit /nonexistent/missing.json").exit_code, 1);
}

TEST(Cli, ValidationErrorsExitTwo) {
    fs::path bad_gate = write_temp_circuit(
        "bad_gate.json",
        R"({"group": [{"ZN": 2}], "input": [0], "gates": [{"automorphism": [["0"]]}]})");
    RunResult r = run_cli("validate --circuit " + bad_gate.string());
    EXPECT_EQ(r.exit_code, 2);
    EXPECT_NE(r.out.find("not an automorphism"), std::string::npos);

    EXPECT_EQ(run_cli("oracle-check --circuit " + circuit("qft_z.json")).exit_code, 2);
}

TEST(Cli, OracleCheckPassesOnDemoCircuits) {
    EXPECT_EQ(run_cli("oracle-check --circuit " + circuit("bell.json") + " --samples 2000")
                  .exit_code,
              0);
    EXPECT_EQ(run_cli("oracle-check --circuit " + circuit("clifford_1q.json") +
                      " --samples 2000")
                  .exit_code,
              0);
}

TEST(Cli, SupportPrintsDescription) {
    RunResult r = run_cli("support --circuit " + circuit("qft_z.json"));
    ASSERT_EQ(r.exit_code, 0);
    Json j = Json::parse(r.out);
    EXPECT_EQ(j["group"], Json::array({"T"}));
    EXPECT_EQ(j["x0"], Json::array({"0"}));
    EXPECT_EQ(j["h_domain"], Json::array({"R"}));
}

}  // namespace
