#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mhk/special.hpp"
#include "mhk_cli/cli.hpp"

using Json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string diag;
    Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, diag;
    Run r;
    r.code = mhk::cli::run(args, out, diag);
    r.out = out.str();
    r.diag = diag.str();
    return r;
}

double re(const Json& v) { return v.at("re").get<double>(); }

fs::path scratch(const std::string& name) {
    fs::path p = fs::temp_directory_path() / ("mhk_cli_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

}  // namespace

TEST_CASE("eval examples") {
    const double kPi = mhk::kPi;
    Run a = run({"eval", "--kernel", "szego", "--n", "1", "--z", "0.3", "--w", "0.2i"});
    REQUIRE(a.code == 0);
    Json j = a.json();
    CHECK(j.at("tool_version") == mhk::cli::kToolVersion);
    CHECK(j.at("config_echo").at("kernel") == "szego");
    const double exact = (1 - 0.09 * 0.04) / std::norm(std::complex<double>(1.0, 0.06)) / (2 * kPi);
    CHECK(re(j["records"][0]["value"]) == doctest::Approx(exact).epsilon(1e-10));
    CHECK(j["records"][0].contains("tail_estimate"));

    j = run({"eval", "--kernel", "szego", "--n", "2", "--z", "0", "--w", "0"}).json();
    CHECK(re(j["records"][0]["value"]) == doctest::Approx(1.0 / (2 * kPi * kPi)).epsilon(1e-14));
    j = run({"eval", "--kernel", "bergman", "--s", "0", "--n", "2", "--z", "0", "--w", "0"}).json();
    CHECK(re(j["records"][0]["value"]) == doctest::Approx(2.0 / (kPi * kPi)).epsilon(1e-13));
    j = run({"eval", "--kernel", "hol", "--s", "0", "--n", "2", "--z", "0", "--w", "0"}).json();
    CHECK(re(j["records"][0]["value"]) == doctest::Approx(2.0 / (kPi * kPi)).epsilon(1e-13));
    // all kernels answer at a common point
    for (const char* k : {"szego-fd", "szego-2f1", "szego-bruteforce", "bergman-bigraded", "harm", "fs"}) {
        Run r = run({"eval", "--kernel", k, "--n", "2", "--z", "0.2,0.1i", "--w", "0.3", "--s", "0"});
        INFO(k << ": " << r.diag);
        CHECK(r.code == 0);
    }
}

TEST_CASE("coeffs examples") {
    Json j = run({"coeffs", "--n", "2", "--s", "0", "--pmax", "1", "--qmax", "1"}).json();
    std::map<std::pair<int, int>, double> c;
    for (const auto& r : j["records"])
        if (r["kind"] == "c_pq")
            c[{r["p"].get<int>(), r["q"].get<int>()}] = r["value"].get<double>();
    CHECK(c.size() == 4u);
    CHECK(c[{0, 0}] == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(c[{1, 1}] == doctest::Approx((96 * mhk::zeta3() - 115) / 4).epsilon(1e-9));

    j = run({"coeffs", "--hardy", "--n", "3", "--pmax", "2", "--qmax", "2"}).json();
    CHECK(j["records"].size() == 9u);
    for (const auto& r : j["records"])
        CHECK(r["value"].get<double>() == 1.0);

    j = run({"coeffs", "--wallach", "--n", "2", "--p", "1", "--q", "0", "--s", "-2.0"}).json();
    CHECK(j["records"][0]["f_pq"].get<double>() == doctest::Approx(0.5).epsilon(1e-8));

    j = run({"coeffs", "--n", "2", "--s", "0", "--pmax", "1", "--qmax", "1", "--slice", "1"}).json();
    bool seen = false;
    for (const auto& r : j["records"])
        if (r["kind"] == "A_pqjm" && r["p"] == 0 && r["q"] == 0 && r["j"] == 0 && r["m"] == 0) {
            CHECK(r["value"].get<double>() == doctest::Approx(4.0));
            seen = true;
        }
    CHECK(seen);
}

TEST_CASE("verify examples") {
    Run a = run({"verify", "--suite", "szego-forms", "--n", "2", "--seed", "7"});
    CHECK(a.code == 0);
    double worst = 0;
    for (const auto& r : a.json()["records"]) {
        CHECK(r["pass"].get<bool>());
        worst = std::max(worst, r["rel_error"].get<double>());
    }
    CHECK(worst <= 1e-8);
    Run b = run({"verify", "--suite", "identity-6-5", "--n", "2", "--mmax", "8"});
    CHECK(b.code == 0);
    CHECK(b.json()["records"].size() == 9u);
    CHECK(b.json()["records"][0]["suite"] == "bigraded-identity");
    CHECK(run({"verify", "--suite", "bigraded-identity", "--n", "3"}).code == 0);
    CHECK(run({"verify", "--suite", "pb", "--n", "1"}).code == 0);
}

TEST_CASE("exit codes") {
    CHECK(run({"coeffs", "--s", "-2"}).code == 2);
    CHECK(run({"eval", "--kernel", "szego", "--n", "2", "--z", "1.2", "--w", "0"}).code == 2);
    CHECK(run({"eval", "--kernel", "szego", "--n", "1", "--z", "0.1,0.2", "--w", "0"}).code == 2);
    CHECK(run({"eval", "--kernel", "nope"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"verify", "--suite", "nope"}).code == 2);
    // too small a degree budget for the quadruple series
    Run nc = run({"eval", "--kernel", "bergman", "--s", "0", "--n", "2", "--z", "0.5", "--w", "0.5", "--degree-cap", "4"});
    CHECK(nc.code == 3);
    CHECK(nc.diag.find("unsettled at degree 4") != std::string::npos);
    CHECK(nc.json()["records"][0]["value"].is_null());
    // s = 5 lies outside the range where the leading term is within 5% at λ = 64
    Run fail = run({"verify", "--suite", "asymptotics", "--n", "2", "--s", "5"});
    CHECK(fail.code == 1);
    CHECK(fail.json()["summary"]["asymptotics"]["failed"].get<int>() >= 1);
}

TEST_CASE("grids and csv") {
    Run g = run({"eval", "--kernel", "szego", "--n", "2", "--grid", "r1:0,0.5,3", "r2:0,0.4,2"});
    REQUIRE(g.code == 0);
    Json j = g.json();
    REQUIRE(j["records"].size() == 6u);
    // last axis fastest
    CHECK(j["records"][1]["node"]["r2"].get<double>() == doctest::Approx(0.4));
    CHECK(j["records"][2]["node"]["r1"].get<double>() == doctest::Approx(0.25));

    Run c = run({"eval", "--kernel", "szego", "--n", "2", "--grid", "r1:0,0.5,3", "--format", "csv"});
    REQUIRE(c.code == 0);
    std::istringstream in(c.out);
    std::string header, line;
    std::getline(in, header);
    CHECK(header.find("value.re") != std::string::npos);
    int rows = 0;
    while (std::getline(in, line))
        rows += !line.empty();
    CHECK(rows == 3);

    Run u = run({"eval", "--kernel", "szego", "--n", "2", "--grid", "U:0,0.3,2", "V:0,0.3,2", "absZ:0,0.2,2"});
    CHECK(u.code == 0);
}

TEST_CASE("output destinations") {
    const fs::path dir = scratch("env");
    setenv(mhk::cli::kOutputDirEnv, dir.c_str(), 1);
    Run a = run({"coeffs", "--hardy", "--pmax", "1", "--qmax", "1"});
    unsetenv(mhk::cli::kOutputDirEnv);
    CHECK(a.code == 0);
    CHECK(a.out.empty());
    CHECK(fs::exists(dir / "coeffs.json"));

    const fs::path file = dir / "explicit.csv";
    Run b = run({"coeffs", "--hardy", "--pmax", "1", "--qmax", "1", "--format", "csv", "--output", file.string()});
    CHECK(b.code == 0);
    CHECK(fs::file_size(file) > 0u);
    fs::remove_all(dir);
}

TEST_CASE("deterministic output") {
    const std::vector<std::string> args{"verify", "--suite", "pb", "folland", "--n", "2", "--seed", "3"};
    CHECK(run(args).out == run(args).out);
    const std::vector<std::string> grid{"eval", "--kernel", "bergman", "--s", "0", "--n", "2", "--grid", "r1:0,0.5,4",
                                        "angle:0,3,3"};
    CHECK(run(grid).out == run(grid).out);
    CHECK(run({"verify", "--suite", "pb", "--seed", "3"}).out != run({"verify", "--suite", "pb", "--seed", "4"}).out);
}
