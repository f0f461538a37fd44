#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "cli_internal.hpp"

namespace mhk::cli {

Json CliConfig::echo() const {
    Json j;
    j["subcommand"] = subcommand;
    j["n"] = n;
    if (hardy)
        j["weight"] = "hardy";
    else if (s)
        j["weight"] = *s;
    else
        j["weight"] = nullptr;
    j["tol"] = tol;
    j["degree_cap"] = degree_cap;
    j["format"] = format;
    j["seed"] = seed;
    if (subcommand == "eval") {
        j["kernel"] = kernel;
        j["z"] = z;
        j["w"] = w;
        j["grid"] = grid;
        j["order"] = order;
    } else if (subcommand == "coeffs") {
        j["pmax"] = pmax;
        j["qmax"] = qmax;
        j["slice"] = slice;
        j["asymptotic"] = asymptotic;
        j["wallach"] = wallach;
        j["p"] = p;
        j["q"] = q;
    } else if (subcommand == "verify") {
        j["suites"] = suites;
        j["mmax"] = mmax;
        j["draws"] = draws;
    }
    return j;
}

KernelParams CliConfig::kernel_params() const {
    KernelParams kp;
    kp.n = n;
    kp.tol = tol;
    kp.degree_cap = degree_cap;
    kp.weight = hardy ? WeightSpec::hardy() : WeightSpec::power(s.value_or(0.0));
    return kp;
}

namespace {

void add_common(CLI::App* sub, CliConfig& cfg) {
    sub->add_option("--n", cfg.n, "ball dimension")->check(CLI::Range(1, 64));
    sub->add_option("--s", cfg.s, "power weight exponent");
    sub->add_flag("--hardy", cfg.hardy, "point mass at t = 1");
    sub->add_option("--tol", cfg.tol, "series tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--degree-cap", cfg.degree_cap, "maximal total degree")->check(CLI::NonNegativeNumber);
    sub->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--output,-o", cfg.output, "output file");
    sub->add_option("--seed", cfg.seed);
}

// Mirrors the library preconditions so bad input fails before any work.
void validate(const CliConfig& cfg) {
    if (cfg.hardy && cfg.s)
        throw DomainError("--hardy and --s are exclusive");
    if (cfg.s) {
        const double s = *cfg.s;
        if (cfg.subcommand == "coeffs" && cfg.wallach) {
            if (!(s > -cfg.n - 1.0))
                throw DomainError("--wallach needs s > -n-1");
        } else if (!(s > -1.0)) {
            throw DomainError("weighted commands need s > -1");
        }
    }
    if (cfg.subcommand == "coeffs" && (cfg.pmax < 0 || cfg.qmax < 0 || cfg.p < 0 || cfg.q < 0))
        throw DomainError("indices must be non-negative");
    if (cfg.subcommand == "verify" && (cfg.draws < 1 || cfg.mmax < 0))
        throw DomainError("--draws must be positive and --mmax non-negative");
}

std::string render(const CliConfig& cfg, const Output& res) {
    if (cfg.format == "csv")
        return to_csv(res.records);
    Json top;
    top["tool_version"] = kToolVersion;
    top["config_echo"] = cfg.echo();
    top["records"] = res.records;
    for (auto& [k, v] : res.extra.items())
        top[k] = v;
    return top.dump(2) + "\n";
}

std::string output_path(const CliConfig& cfg) {
    if (!cfg.output.empty())
        return cfg.output;
    if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir)
        return (std::filesystem::path(dir) / (cfg.subcommand + "." + cfg.format)).string();
    return {};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& diag) {
    CliConfig cfg;
    CLI::App app{"M-harmonic kernels on the complex unit ball"};
    app.require_subcommand(1);

    auto* eval = app.add_subcommand("eval", "evaluate a kernel at points or on a grid");
    add_common(eval, cfg);
    eval->add_option("--kernel", cfg.kernel)
        ->check(CLI::IsMember({"szego", "szego-fd", "szego-2f1", "szego-diagonal", "szego-orthogonal",
                               "szego-bruteforce", "bergman", "bergman-bigraded", "poisson", "fs",
                               "hol", "harm"}));
    eval->add_option("--z", cfg.z, "point, comma separated complex coordinates");
    eval->add_option("--w", cfg.w);
    eval->add_option("--grid", cfg.grid, "axis:start,stop,count; axes r1 r2 angle or U V absZ");
    eval->add_option("--order", cfg.order, "F_s order s (-1 gives the plain expansion)");

    auto* coeffs = app.add_subcommand("coeffs", "tables of c_pq, A_pqjm and f_pq");
    add_common(coeffs, cfg);
    coeffs->add_option("--pmax", cfg.pmax);
    coeffs->add_option("--qmax", cfg.qmax);
    coeffs->add_option("--slice", cfg.slice, "also emit A_pqjm for j,m <= slice");
    coeffs->add_flag("--asymptotic", cfg.asymptotic, "add c_pq / leading term");
    coeffs->add_flag("--wallach", cfg.wallach, "f_pq(s) = c_00/c_pq continued to s > -n-1");
    coeffs->add_option("--p", cfg.p);
    coeffs->add_option("--q", cfg.q);

    auto* verify = app.add_subcommand("verify", "run identity suites");
    add_common(verify, cfg);
    verify->add_option("--suite", cfg.suites, "pb szego-forms orthogonality folland reproducing "
                                              "bigraded-identity asymptotics wallach semiclassical all");
    verify->add_option("--mmax", cfg.mmax);
    verify->add_option("--draws", cfg.draws, "random cases per suite");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        diag << "error: " << e.what() << "\n";
        return kDomainError;
    }
    for (auto* sub : {eval, coeffs, verify})
        if (sub->parsed())
            cfg.subcommand = sub->get_name();

    Output res;
    try {
        validate(cfg);
        if (cfg.subcommand == "eval")
            res = cmd_eval(cfg, diag);
        else if (cfg.subcommand == "coeffs")
            res = cmd_coeffs(cfg, diag);
        else
            res = cmd_verify(cfg, diag);
    } catch (const NonConvergent& e) {
        diag << "non-convergence: " << e.what() << "\n";
        return kNonConvergent;
    } catch (const QuadratureFailure& e) {
        diag << "non-convergence: " << e.what() << "\n";
        return kNonConvergent;
    } catch (const Error& e) {
        diag << "domain error: " << e.what() << "\n";
        return kDomainError;
    }

    const std::string text = render(cfg, res);
    const std::string path = output_path(cfg);
    if (path.empty()) {
        out << text;
    } else {
        std::ofstream f(path, std::ios::binary);
        if (!f) {
            diag << "cannot write " << path << "\n";
            return kDomainError;
        }
        f << text;
    }
    return res.code;
}

}  // namespace mhk::cli
