#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pt/cli.hpp"

namespace {

struct Result {
    int status = 0;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    args.insert(args.begin(), "pt_spectra");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int status = pt::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {status, out.str(), err.str()};
}

nlohmann::json run_json(std::vector<std::string> args)
{
    args.emplace_back("--format");
    args.emplace_back("json");
    const Result r = run(args);
    EXPECT_EQ(r.status, 0) << r.err;
    return nlohmann::json::parse(r.out);
}

std::vector<std::string> lines(const std::string& text)
{
    std::vector<std::string> out;
    std::istringstream is(text);
    for (std::string l; std::getline(is, l);) {
        out.push_back(l);
    }
    return out;
}

// Runs the installed binary through the shell; returns exit status and stdout.
Result shell(const std::string& args)
{
    const std::string cmd = std::string(PT_SPECTRA_BINARY) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    Result r;
    std::array<char, 4096> buf{};
    while (std::fgets(buf.data(), buf.size(), pipe) != nullptr) {
        r.out += buf.data();
    }
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

}  // namespace

TEST(Cli, SpectrumCsvBoxCase)
{
    const Result r = run({"spectrum", "--m", "1", "--hbar", "1", "--V0", "0", "--L", "3.14159265358979", "--nmax", "3",
                          "--format", "csv"});
    ASSERT_EQ(r.status, 0) << r.err;
    const auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 6u);
    EXPECT_EQ(ls[0].rfind("# command=spectrum", 0), 0u);
    EXPECT_NE(ls[0].find(" V0=0 "), std::string::npos);
    EXPECT_EQ(ls[1], "n,epsilon,E,E_box_part,E_osc_part");
    for (int n = 0; n <= 3; ++n) {
        std::istringstream row(ls[2 + n]);
        std::string cell;
        std::vector<double> v;
        while (std::getline(row, cell, ',')) {
            v.push_back(std::stod(cell));
        }
        ASSERT_EQ(v.size(), 5u);
        EXPECT_EQ(v[0], n);
        EXPECT_NEAR(v[2], 0.5 * (n + 1) * (n + 1), 1e-12);
        EXPECT_NEAR(v[2], v[3] + v[4], 1e-12);
    }
}

TEST(Cli, SpectrumJsonMatchesLibrary)
{
    const auto j = run_json({"spectrum", "--V0", "1.3", "--L", "2", "--nmax", "4"});
    const pt::PhysicalParams p{1.0, 1.0, 1.3, 2.0};
    EXPECT_EQ(j["params"]["lambda"].get<double>(), pt::reduce(p).lambda);
    ASSERT_EQ(j["rows"].size(), 5u);
    for (int n = 0; n <= 4; ++n) {
        EXPECT_EQ(j["rows"][n]["E"].get<double>(), pt::energy_level(n, p).E);
    }
}

TEST(Cli, PotentialColumnsAndBand)
{
    const auto j = run_json({"potential", "--V0", "2", "--L", "1", "--points", "21"});
    ASSERT_EQ(j["rows"].size(), 21u);
    for (const auto& row : j["rows"]) {
        const double x = row["x"].get<double>();
        EXPECT_LT(std::fabs(x), 0.5);
        EXPECT_EQ(row["V_exact"].get<double>(), pt::eval_exact(x, {1.0, 1.0, 2.0, 1.0}));
        EXPECT_EQ(row["V_nearwall"].is_null(), !(std::fabs(x) > 0.4));
    }
}

TEST(Cli, WavefunctionCarriesNormalization)
{
    const auto j = run_json({"wavefunction", "--V0", "0", "--L", "3.141592653589793", "--n", "0", "--points", "11"});
    EXPECT_NEAR(j["params"]["C_n"].get<double>(), std::sqrt(2.0 / std::numbers::pi), 1e-12);
    EXPECT_EQ(j["rows"].front()["psi"].get<double>(), 0.0);
    EXPECT_EQ(j["rows"].back()["psi"].get<double>(), 0.0);
    EXPECT_NEAR(j["rows"][5]["psi"].get<double>(), std::sqrt(2.0 / std::numbers::pi), 1e-12);
}

TEST(Cli, VerifyAllWithinTolerance)
{
    const auto j = run_json({"verify", "--v", "0,2,6,12", "--levels", "5", "--N", "2048"});
    ASSERT_EQ(j["rows"].size(), 20u);
    for (const auto& row : j["rows"]) {
        EXPECT_LE(row["rel_err"].get<double>(), 1e-6);
    }
    EXPECT_EQ(j["params"]["N2"].get<int>(), 4096);
}

TEST(Cli, ThermoSweep)
{
    const Result r = run({"thermo", "--V0", "0", "--L", "1", "--T-sweep", "1e2:1e4:logarithmic", "--points", "3",
                          "--format", "json"});
    ASSERT_EQ(r.status, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    ASSERT_EQ(j["rows"].size(), 3u);
    EXPECT_EQ(j["rows"][0]["T"].get<double>(), 1e2);
    EXPECT_EQ(j["rows"][1]["T"].get<double>(), 1e3);
    EXPECT_EQ(j["rows"][2]["T"].get<double>(), 1e4);
    // L = 1 gives beta W = pi^2/2e4 at T = 1e4: Euler-Maclaurin predicts P L / T = a/(a - 1/2), a = sqrt(pi/(beta W))/2
    const double bw = std::numbers::pi * std::numbers::pi / 2.0 / 1e4;
    const double a = 0.5 * std::sqrt(std::numbers::pi / bw);
    const double plt = j["rows"][2]["P"].get<double>() * 1.0 / 1e4;
    EXPECT_NEAR(plt, a / (a - 0.5), 1e-4);
}

TEST(Cli, ThermoIdealGasAtBetaWOneInTenThousand)
{
    // W = 1/2 at L = pi, so T = 5e3 gives beta W = 1e-4
    const auto j = run_json({"thermo", "--V0", "0", "--L", "3.141592653589793", "--T", "5000"});
    EXPECT_NEAR(j["rows"][0]["P"].get<double>() * std::numbers::pi / 5000.0, 1.0, 1e-2);
}

TEST(Cli, LimitsTables)
{
    const auto j = run_json({"limits", "--k", "1"});
    int box = 0;
    int bloch = 0;
    double last_box = 1.0;
    double last_bloch = 1.0;
    for (const auto& row : j["rows"]) {
        const double dev = row["rel_dev"].get<double>();
        if (row["limit"] == "box") {
            ++box;
            EXPECT_LT(dev, last_box);
            last_box = dev;
        } else {
            ++bloch;
            EXPECT_EQ(row["limit"], "bloch");
            EXPECT_LT(dev, last_bloch);
            last_bloch = dev;
        }
    }
    EXPECT_EQ(box, 8);
    EXPECT_EQ(bloch, 8);
    EXPECT_LT(last_box, 1e-7);
    EXPECT_LT(last_bloch, 1e-6);
}

TEST(Cli, ValidationErrorsExitTwo)
{
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"spectrum", "--L", "-1"},
             {"spectrum", "--V0", "-2"},
             {"spectrum", "--format", "xml"},
             {"nonsense"},
             {},
             {"thermo", "--V0", "0"},
             {"thermo", "--T-sweep", "5:1:linear"},
             {"thermo", "--T-sweep", "1:5:cubic"},
             {"thermo", "--T", "1", "--tol", "0.5"},
             {"verify", "--v", "0", "--N", "2048", "--levels", "600"},
             {"wavefunction", "--points", "1"}}) {
        const Result r = run(args);
        EXPECT_EQ(r.status, 2) << (args.empty() ? "" : args.front());
        const auto err = nlohmann::json::parse(r.err);
        EXPECT_TRUE(err.contains("error"));
        EXPECT_TRUE(err.contains("message"));
        EXPECT_EQ(lines(r.err).size(), 1u);
        EXPECT_TRUE(r.out.empty());
    }
}

TEST(Cli, NumericFailureExitsThree)
{
    // W is about 5e304, so E_n overflows long before n = 1000
    const Result r = run({"spectrum", "--m", "1e-304", "--L", "1", "--nmax", "1000"});
    EXPECT_EQ(r.status, 3);
    EXPECT_EQ(nlohmann::json::parse(r.err)["error"], "numeric");
}

TEST(Cli, BinaryIsDeterministic)
{
    const std::string args = "thermo --V0 1 --L 2 --T-sweep 0.1:100:logarithmic --points 7";
    const Result a = shell(args);
    ASSERT_EQ(a.status, 0);
    EXPECT_FALSE(a.out.empty());
    const Result c = shell(args);
    EXPECT_EQ(a.out, c.out);
}

TEST(Cli, ThreadCapDoesNotChangeOutput)
{
    const std::string args = "verify --v 0,2 --levels 3 --N 256 --format json";
    const std::string bin = PT_SPECTRA_BINARY;
    auto capture = [&](const std::string& env) {
        const std::string cmd = env + " " + bin + " " + args;
        FILE* pipe = popen(cmd.c_str(), "r");
        std::string out;
        std::array<char, 4096> buf{};
        while (std::fgets(buf.data(), buf.size(), pipe) != nullptr) {
            out += buf.data();
        }
        const int raw = pclose(pipe);
        return std::make_pair(WEXITSTATUS(raw), out);
    };
    const auto one = capture("PT_SPECTRA_THREADS=1");
    const auto many = capture("PT_SPECTRA_THREADS=8");
    EXPECT_EQ(one.first, 0);
    EXPECT_EQ(one.second, many.second);
    EXPECT_EQ(capture("PT_SPECTRA_THREADS=zero").first, 2);
    EXPECT_EQ(capture("PT_SPECTRA_THREADS=0").first, 2);
}

TEST(Cli, HelpExitsZero)
{
    const Result r = run({"--help"});
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("spectrum"), std::string::npos);
}
