#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "pap/parallel.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path scenarios = PAP_SCENARIO_DIR;
const fs::path data = PAP_TEST_DATA_DIR;
const fs::path golden = PAP_GOLDEN_DIR;

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Fresh scratch directory per call.
fs::path scratch(const std::string& tag) {
    static int counter = 0;
    const auto p = fs::temp_directory_path() / ("papsim_cli_" + std::to_string(::getpid()) + "_" + tag + "_" +
                                                std::to_string(counter++));
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

papsim::Report run(const std::string& command, const fs::path& config, const fs::path& out,
                   std::vector<std::string> overrides = {}) {
    papsim::Request req;
    req.command = command;
    req.config = config;
    req.overrides = std::move(overrides);
    req.out_dir = out;
    return papsim::run(req);
}

// Every output except the manifest, which records wall time and thread count.
std::map<std::string, std::string> artifacts(const fs::path& dir) {
    std::map<std::string, std::string> out;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().filename().string().find("manifest") == std::string::npos)
            out[e.path().filename().string()] = slurp(e.path());
    return out;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string x;
    while (std::getline(ss, x, ',')) f.push_back(x);
    return f;
}

std::pair<std::string, std::string> header_and_last_row(const fs::path& csv) {
    std::ifstream in(csv);
    std::string header, line, last;
    std::getline(in, header);
    while (std::getline(in, line))
        if (!line.empty()) last = line;
    return {header, last};
}

struct Shell {
    int status;
    std::string out, err;
};

Shell shell(const std::string& cmd) {
    const auto dir = scratch("shell");
    const auto o = dir / "stdout", e = dir / "stderr";
    const int rc = std::system((cmd + " >" + o.string() + " 2>" + e.string()).c_str());
    return {WIFEXITED(rc) ? WEXITSTATUS(rc) : -1, slurp(o), slurp(e)};
}

}  // namespace

TEST(Cli, RatesPresetFractionPerPulse) {
    const auto dir = scratch("rates");
    const auto rep = run("rates", scenarios / "rates_budget.ini", dir);
    ASSERT_EQ(rep.exit_code, 0) << rep.error_message;
    const auto j = json::parse(slurp(dir / "rates_rates.json"));
    EXPECT_NEAR(j["fraction_per_pulse"].get<double>(), 4e-7, 0.05 * 4e-7);
    EXPECT_NEAR(j["r_st_au"].get<double>() / 4.21e9, 1.0, 0.01);
    EXPECT_NEAR(j["budget"]["claimed_molecules_per_second"].get<double>(), 1.5e7, 1e-6 * 1.5e7);
}

TEST(Cli, MissingConfigIsExitTwo) {
    const auto rep = run("rates", data / "does_not_exist.ini", scratch("missing"));
    EXPECT_EQ(rep.exit_code, 2);
    EXPECT_EQ(rep.error_tag, "CONFIG_NOT_FOUND");
}

TEST(Cli, BinaryReportsTaggedError) {
    const auto r = shell(std::string(PAPSIM_EXE) + " rates " + (data / "does_not_exist.ini").string());
    EXPECT_EQ(r.status, 2);
    EXPECT_NE(r.err.find("error[CONFIG_NOT_FOUND]"), std::string::npos) << r.err;
    EXPECT_TRUE(r.out.empty());
}

TEST(Cli, BinaryRejectsBadArguments) {
    EXPECT_EQ(shell(std::string(PAPSIM_EXE) + " frobnicate x.ini").status, 2);
    EXPECT_EQ(shell(std::string(PAPSIM_EXE)).status, 2);
    EXPECT_EQ(shell(std::string(PAPSIM_EXE) + " --version").status, 0);
}

TEST(Cli, UnknownOverrideKey) {
    const auto rep = run("rates", scenarios / "rates_budget.ini", scratch("unknown"), {"ensemble.bogus=1"});
    EXPECT_EQ(rep.exit_code, 2);
    EXPECT_EQ(rep.error_tag, "UNKNOWN_KEY");
}

TEST(Cli, MissingUnit) {
    const auto rep = run("rates", scenarios / "rates_budget.ini", scratch("unit"), {"ensemble.temperature=100"});
    EXPECT_EQ(rep.exit_code, 2);
    EXPECT_EQ(rep.error_tag, "MISSING_UNIT");
}

TEST(Cli, WrongDimension) {
    const auto rep = run("rates", scenarios / "rates_budget.ini", scratch("dim"), {"ensemble.temperature=100 ns"});
    EXPECT_EQ(rep.exit_code, 2);
    EXPECT_EQ(rep.error_tag, "DIMENSION_MISMATCH");
}

TEST(Cli, NonConvergenceIsExitThree) {
    const auto rep = run("ensemble", scenarios / "fig6_ensemble.ini", scratch("noconv"), {"quadrature.max_nodes=8"});
    EXPECT_EQ(rep.exit_code, 3);
    EXPECT_EQ(rep.error_tag, "NON_CONVERGENCE");
}

TEST(Cli, DynamicsMatchesGoldenFinalRow) {
    const auto dir = scratch("golden");
    const auto rep = run("dynamics", scenarios / "fig5_coherent.ini", dir);
    ASSERT_EQ(rep.exit_code, 0) << rep.error_message;
    const auto [header, row] = header_and_last_row(dir / "fig5_timeseries.csv");
    const auto [gheader, grow] = header_and_last_row(golden / "fig5_final_row.csv");
    EXPECT_EQ(header, gheader);
    const auto a = split(row), b = split(grow);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double x = std::stod(a[i]), y = std::stod(b[i]);
        EXPECT_NEAR(x, y, 1e-8 * std::abs(y) + 1e-14) << "column " << i;
    }
    const auto j = json::parse(slurp(dir / "fig5_summary.json"));
    EXPECT_NEAR(j["result"]["final_populations"]["X4"].get<double>(), 0.6, 0.08);
}

TEST(Cli, Deterministic) {
    const auto a = scratch("det"), b = scratch("det");
    ASSERT_EQ(run("dynamics", scenarios / "fig8_intensity_scan.ini", a).exit_code, 0);
    ASSERT_EQ(run("dynamics", scenarios / "fig8_intensity_scan.ini", b).exit_code, 0);
    const auto fa = artifacts(a), fb = artifacts(b);
    EXPECT_GE(fa.size(), 3u);
    EXPECT_EQ(fa, fb);
}

TEST(Cli, OverrideEqualsEditedConfig) {
    const auto edited_dir = scratch("edit");
    std::string text = slurp(scenarios / "rates_budget.ini");
    const std::string from = "probability = 0.6";
    text.replace(text.find(from), from.size(), "probability = 0.3");
    const auto edited = edited_dir / "rates_edited.ini";
    std::ofstream(edited) << text;

    const auto a = scratch("ovr"), b = scratch("ovr");
    ASSERT_EQ(run("rates", scenarios / "rates_budget.ini", a, {"rates.probability=0.3"}).exit_code, 0);
    ASSERT_EQ(run("rates", edited, b).exit_code, 0);
    EXPECT_EQ(artifacts(a), artifacts(b));
    const auto ma = json::parse(slurp(a / "rates_manifest.json")), mb = json::parse(slurp(b / "rates_manifest.json"));
    EXPECT_EQ(ma["config_hash"], mb["config_hash"]);
}

TEST(Cli, ManifestFields) {
    const auto dir = scratch("manifest");
    const auto rep = run("rates", scenarios / "rates_budget.ini", dir, {"rates.J=0"});
    ASSERT_EQ(rep.exit_code, 0);
    EXPECT_EQ(rep.outputs.back().filename(), "rates_manifest.json");
    const auto m = json::parse(slurp(dir / "rates_manifest.json"));
    for (const char* k : {"command", "config", "config_hash", "overrides", "version", "threads", "outputs", "wall_time_s"})
        EXPECT_TRUE(m.contains(k)) << k;
    EXPECT_EQ(m["command"], "rates");
    EXPECT_EQ(m["version"], papsim::tool_version);
    EXPECT_EQ(m["config_hash"].get<std::string>().size(), 16u);
    EXPECT_EQ(m["overrides"][0], "rates.J=0");
}

TEST(Cli, LevelsOnMorseScenario) {
    const auto dir = scratch("levels");
    const auto rep = run("levels", data / "morse_levels.ini", dir);
    ASSERT_EQ(rep.exit_code, 0) << rep.error_message;
    std::ifstream in(dir / "morse_levels.csv");
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "v,J,E_au,E_cm-1,outer_turning_point_au");
    int rows = 0;
    const double w = 0.5 * std::sqrt(2.0 * 0.02 / 1000.0);
    while (std::getline(in, line)) {
        const auto f = split(line);
        const int v = std::stoi(f[0]);
        const double x = w * (v + 0.5);
        EXPECT_NEAR(std::stod(f[2]), x - x * x / 0.08, 1e-9);
        ++rows;
    }
    EXPECT_EQ(rows, 6);
}

TEST(Cli, NoTemporaryFilesLeft) {
    const auto dir = scratch("tmp");
    ASSERT_EQ(run("dynamics", scenarios / "fig5_coherent.ini", dir).exit_code, 0);
    ASSERT_EQ(run("rates", scenarios / "rates_budget.ini", dir).exit_code, 0);
    for (const auto& e : fs::directory_iterator(dir))
        EXPECT_EQ(e.path().filename().string().find(".tmp"), std::string::npos) << e.path();
}

TEST(Cli, ThreadCountDoesNotChangeResults) {
    const auto a = scratch("t1"), b = scratch("t4");
    const std::string cfg = (scenarios / "fig6_ensemble.ini").string();
    ASSERT_EQ(shell("PAPSIM_THREADS=1 " + std::string(PAPSIM_EXE) + " ensemble " + cfg + " -o " + a.string()).status, 0);
    ASSERT_EQ(shell("PAPSIM_THREADS=4 " + std::string(PAPSIM_EXE) + " ensemble " + cfg + " -o " + b.string()).status, 0);
    EXPECT_EQ(artifacts(a), artifacts(b));
    EXPECT_EQ(json::parse(slurp(a / "fig6_manifest.json"))["threads"], 1);
    EXPECT_EQ(json::parse(slurp(b / "fig6_manifest.json"))["threads"], 4);
}
