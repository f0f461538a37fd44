#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mhk/ball.hpp"
#include "mhk_cli/cli.hpp"
#include "mhk/kernels.hpp"
#include "mhk/oracle.hpp"

namespace mhk::cli {

using Json = nlohmann::ordered_json;

struct CliConfig {
    std::string subcommand;
    int n = 2;
    bool hardy = false;
    std::optional<double> s;
    double tol = 1e-12;
    int degree_cap = 320;
    std::string format = "json";
    std::string output;
    std::uint64_t seed = 7;

    // eval
    std::string kernel = "szego";
    std::string z = "0";
    std::string w = "0";
    std::vector<std::string> grid;
    int order = 0;

    // coeffs
    int pmax = 3;
    int qmax = 3;
    int slice = -1;
    bool asymptotic = false;
    bool wallach = false;
    int p = 1;
    int q = 0;

    // verify
    std::vector<std::string> suites;
    int mmax = 8;
    int draws = 10;

    Json echo() const;
    KernelParams kernel_params() const;
};

struct Output {
    Json records = Json::array();
    Json extra = Json::object();  // merged into the top-level object
    int code = kOk;
};

// Complex scalar: 0.3, -2i, 0.1+0.2i, i.
Complex parse_complex(const std::string& text);
// Comma-separated coordinates, zero-padded to n.
CVector parse_point(const std::string& text, int n);

Json to_json(Complex z);
Json to_json(const CVector& v);
Json report_json(const OracleReport& rep);

Output cmd_eval(const CliConfig& cfg, std::ostream& diag);
Output cmd_coeffs(const CliConfig& cfg, std::ostream& diag);
Output cmd_verify(const CliConfig& cfg, std::ostream& diag);

std::string to_csv(const Json& records);

}  // namespace mhk::cli
