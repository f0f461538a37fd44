#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

#include "cli_internal.hpp"

namespace mhk::cli {

namespace {

struct Case {
    std::string name;
    OracleReport rep;
    double tolerance = 0.0;
    bool pass = false;
    std::string criterion = "rel_error <= tolerance";
};

using Suite = std::function<std::vector<Case>(const CliConfig&, std::mt19937_64&)>;

// Relative test, or absolute when the right side vanishes.
Case judged(std::string name, OracleReport rep, double tol) {
    if (std::abs(rep.rhs) == 0.0)
        rep.rel_error = rep.abs_error;
    Case c;
    c.name = std::move(name);
    c.pass = rep.rel_error <= tol;
    c.rep = std::move(rep);
    c.tolerance = tol;
    return c;
}

OracleReport make_report(std::string identity, Complex lhs, Complex rhs,
                         std::vector<std::pair<std::string, double>> budget = {},
                         std::optional<std::uint64_t> seed = std::nullopt) {
    OracleReport r;
    r.identity_name = std::move(identity);
    r.lhs = lhs;
    r.rhs = rhs;
    r.budget = std::move(budget);
    r.seed = seed;
    r.finish();
    return r;
}

double uniform(std::mt19937_64& rng, double a, double b) {
    return std::uniform_real_distribution<double>(a, b)(rng);
}

BallPoint draw_point(int n, double rmax, std::mt19937_64& rng) {
    return random_ball_point(n, uniform(rng, 0.0, rmax), rng);
}

std::string idx(int p, int q) { return std::to_string(p) + "," + std::to_string(q); }

// (1/2π)(1-|x|²|y|²)/|1-x conj(y)|², the disc Szegő kernel
double disc_szego(Complex x, Complex y) {
    return (1.0 - std::norm(x) * std::norm(y)) / std::norm(1.0 - x * std::conj(y)) / (2.0 * kPi);
}

std::vector<Case> suite_pb(const CliConfig& cfg, std::mt19937_64& rng) {
    std::vector<Case> out;
    const int n = cfg.n;
    for (int i = 0; i < cfg.draws; ++i) {
        double prm[4];
        for (double& a : prm)
            a = uniform(rng, 0.5, 2.5);
        const BallPoint z = draw_point(n, 0.6, rng), w = draw_point(n, 0.6, rng);
        const double r = std::sqrt(std::max(z.norm2(), w.norm2()));
        const int cap = bruteforce_degree(r, 1e-13, *std::max_element(prm, prm + 4));
        OracleReport rep = theorem_pb_check(n, prm[0], prm[1], prm[2], prm[3], z, w, cap);
        rep.seed = cfg.seed;
        out.push_back(judged("draw " + std::to_string(i), rep, 1e-8));
    }
    if (n == 1) {
        for (int i = 0; i < cfg.draws; ++i) {
            const BallPoint z = draw_point(1, 0.6, rng), w = draw_point(1, 0.6, rng);
            const double r = std::sqrt(std::max(z.norm2(), w.norm2()));
            const SeriesValue b = szego_bruteforce(1, z, w, bruteforce_degree(r, 1e-14));
            out.push_back(judged("disc closed form " + std::to_string(i),
                                 make_report("brute-force Szego kernel = disc closed form", b.value,
                                             disc_szego(z[0], w[0]),
                                             {{"degree_cap", b.truncation_order}}, cfg.seed),
                                 1e-10));
        }
    }
    return out;
}

std::vector<Case> suite_szego_forms(const CliConfig& cfg, std::mt19937_64& rng) {
    std::vector<Case> out;
    const int n = cfg.n;
    KernelParams hardy;
    hardy.n = n;
    for (int i = 0; i < cfg.draws; ++i) {
        const BallPoint z = draw_point(n, 0.6, rng), w = draw_point(n, 0.6, rng);
        const std::string tag = " " + std::to_string(i);
        const SeriesValue fd = szego_fd(n, z, w);
        const SeriesValue tf = szego_2f1(n, z, w);
        const double r = std::sqrt(std::max(z.norm2(), w.norm2()));
        const SeriesValue bf = szego_bruteforce(n, z, w, bruteforce_degree(r, 1e-14));
        auto rep = [&](const char* id, Complex a, Complex b) {
            return make_report(id, a, b, {{"fd_order", fd.truncation_order}}, cfg.seed);
        };
        if (n == 1) {
            const double cf = disc_szego(z[0], w[0]);
            out.push_back(judged("fd vs closed" + tag, rep("szego_fd = disc closed form", fd.value, cf), 1e-10));
            out.push_back(judged("2f1 vs closed" + tag, rep("szego_2f1 = disc closed form", tf.value, cf), 1e-10));
            out.push_back(judged("brute vs closed" + tag, rep("szego_bruteforce = disc closed form", bf.value, cf), 1e-10));
            continue;
        }
        const SeriesValue bk = bergman_kernel(hardy, z, w);
        out.push_back(judged("fd vs 2f1" + tag, rep("szego_fd = szego_2f1", fd.value, tf.value), 1e-8));
        out.push_back(judged("fd vs bergman" + tag, rep("szego_fd = bergman_kernel(point mass)", fd.value, bk.value), 1e-8));
        out.push_back(judged("fd vs brute" + tag, rep("szego_fd = szego_bruteforce", fd.value, bf.value), 1e-8));
        out.push_back(judged("2f1 vs brute" + tag, rep("szego_2f1 = szego_bruteforce", tf.value, bf.value), 1e-8));
    }
    return out;
}

std::vector<Case> suite_orthogonality(const CliConfig& cfg, std::mt19937_64& rng) {
    std::vector<Case> out;
    const int n = cfg.n;
    if (n < 2)
        return out;
    const SpherePoint zeta = random_sphere_point(n, rng), xi = random_sphere_point(n, rng);
    for (int p = 0; p <= 3; ++p)
        for (int q = 0; q <= 3; ++q) {
            const SpherePoly a = zonal_poly({p, q}, n, zeta.coords());
            for (int k = 0; k <= 3; ++k)
                for (int l = 0; l <= 3; ++l) {
                    const SpherePoly b = zonal_poly({k, l}, n, xi.coords(), true);
                    const Complex lhs = sphere_poly_integral(poly_multiply(a, b), n);
                    const Complex rhs = (p == k && q == l) ? zonal_h({p, q}, n, inner(zeta, xi)) : 0.0;
                    out.push_back(judged("H" + idx(p, q) + " x H" + idx(k, l),
                                         make_report("int H^pq(<zeta,eta>) H^kl(<eta,xi>) = delta H^pq(<zeta,xi>)",
                                                     lhs, rhs, {{"terms", double(a.size() * b.size())}}, cfg.seed),
                                         1e-10));
                }
        }
    return out;
}

std::vector<Case> suite_folland(const CliConfig& cfg, std::mt19937_64& rng) {
    std::vector<Case> out;
    const int n = cfg.n;
    for (int i = 0; i < cfg.draws; ++i) {
        const BallPoint z = draw_point(n, 0.5, rng);
        const SpherePoint eta = random_sphere_point(n, rng);
        const Complex lhs = poisson_partial_sum(n, z, eta, 40);
        out.push_back(judged("draw " + std::to_string(i),
                             make_report("Poisson-Szego expansion at cap 40 = closed form", lhs,
                                         poisson_szego(n, z, eta), {{"degree_cap", 40}}, cfg.seed),
                             1e-8));
    }
    return out;
}

std::vector<Case> suite_reproducing(const CliConfig& cfg, std::mt19937_64& rng) {
    std::vector<Case> out;
    const int n = cfg.n;
    if (n < 2)
        return out;
    KernelParams hardy, power;
    hardy.n = power.n = n;
    power.weight = WeightSpec::power(cfg.s.value_or(0.0));
    for (const KernelParams* kp : {&hardy, &power})
        for (int p = 0; p <= 2; ++p)
            for (int q = 0; q <= 2; ++q) {
                const BallPoint z = draw_point(n, 0.6, rng);
                OracleReport rep = reproducing_check(*kp, {p, q}, z);
                rep.seed = cfg.seed;
                const std::string w = kp->weight.is_hardy() ? "hardy" : "s=" + std::to_string(kp->weight.s);
                out.push_back(judged(w + " (" + idx(p, q) + ")", rep, 1e-6));
            }
    return out;
}

std::vector<Case> suite_identity(const CliConfig& cfg, std::mt19937_64&) {
    std::vector<Case> out;
    for (int m = 0; m <= cfg.mmax; ++m) {
        const auto [lhs, rhs] = bigraded_identity_sides(cfg.n, m);
        out.push_back(judged("m=" + std::to_string(m),
                             make_report("bigraded Gamma-ratio sum = (2n)_m^2/(m!(n)_m)", lhs, rhs), 1e-10));
    }
    return out;
}

// |ratio - 1| must shrink strictly with λ and end below 0.05.
std::vector<Case> suite_asymptotics(const CliConfig& cfg, std::mt19937_64&) {
    std::vector<Case> out;
    const int n = cfg.n;
    std::vector<double> svals = cfg.s ? std::vector<double>{*cfg.s} : std::vector<double>{0.0, 1.0};
    const int lambdas[] = {8, 16, 32, 64};
    for (double s : svals) {
        KernelParams kp;
        kp.n = n;
        kp.weight = WeightSpec::power(s);
        double prev = INFINITY;
        for (int lam : lambdas) {
            const double c2 = 2.0 * coeff_cpq(kp, lam, lam);
            const double lead = cpq_asymptotic_leading(n, s, lam, lam);
            Case c;
            c.name = "s=" + std::to_string(s) + " lambda=" + std::to_string(lam);
            c.rep = make_report("2 c_{l,l}(s) ~ leading term", c2, lead, {{"lambda", lam}});
            // the 0.05 endpoint is the n = 2 acceptance figure; other n only need the trend
            const bool endpoint = lam == 64 && n == 2;
            c.tolerance = endpoint ? std::min(prev, 0.05) : prev;
            c.pass = c.rep.rel_error < prev && (!endpoint || c.rep.rel_error <= 0.05);
            c.criterion = endpoint ? "|ratio-1| below the previous lambda and <= 0.05" : "|ratio-1| below the previous lambda";
            prev = c.rep.rel_error;
            out.push_back(c);
        }
    }
    return out;
}

std::vector<Case> suite_wallach(const CliConfig& cfg, std::mt19937_64&) {
    std::vector<Case> out;
    const int n = cfg.n;
    KernelParams kp;
    kp.n = n;
    // for n = 1 only H^{p0} and H^{0q} are non-trivial
    auto skip = [&](int p, int q) { return (p == 0 && q == 0) || (n == 1 && p * q != 0); };
    for (double s : {-n - 0.5, -n + 0.5, 0.0, 1.0}) {
        const double f = wallach_f(kp, 1, 0, s);
        out.push_back(judged("f10 s=" + std::to_string(s),
                             make_report("f_10(s) = (n+s+1)/n", f, (n + s + 1.0) / n), 1e-8));
    }
    for (int k = 1; k <= 10; ++k) {
        const double s = -n - 1.0 + (n + 3.0) * k / 10.0;
        for (int p = 0; p <= 3; ++p)
            for (int q = 0; q <= 3; ++q) {
                if (skip(p, q))
                    continue;
                Case c;
                c.name = "positive f" + idx(p, q) + " s=" + std::to_string(s);
                const double f = wallach_f(kp, p, q, s);
                c.rep = make_report("f_pq(s) > 0", f, f);
                c.pass = f > 0.0;
                c.criterion = "lhs > 0";
                out.push_back(c);
            }
    }
    for (double s : {-0.5, 0.0, 1.0, 2.0}) {
        KernelParams wp;
        wp.n = n;
        wp.weight = WeightSpec::power(s);
        const double c00 = coeff_cpq(wp, 0, 0);
        for (int p = 0; p <= 3; ++p)
            for (int q = 0; q <= 3; ++q) {
                if (skip(p, q))
                    continue;
                out.push_back(judged("overlap f" + idx(p, q) + " s=" + std::to_string(s),
                                     make_report("series f_pq(s) = c_00/c_pq by quadrature", wallach_f(kp, p, q, s),
                                                 c00 / coeff_cpq(wp, p, q)),
                                     1e-6));
            }
    }
    return out;
}

std::vector<Case> suite_semiclassical(const CliConfig& cfg, std::mt19937_64&) {
    std::vector<Case> out;
    const int n = cfg.n;
    const BallPoint z = BallPoint::axis(n, 0, 0.4);
    double prev = INFINITY;
    for (double s : {25.0, 50.0, 100.0}) {
        const double ratio = semiclassical_ratio(n, s, z);
        Case c;
        c.name = "s=" + std::to_string(s);
        c.rep = make_report("K_s(z,z)^{1/s} (1-|z|^2) -> 1", ratio, 1.0, {{"s", s}});
        c.tolerance = prev;
        c.pass = c.rep.abs_error < prev;
        c.criterion = "deviation strictly below the previous s";
        prev = c.rep.abs_error;
        out.push_back(c);
    }
    return out;
}

const std::vector<std::pair<std::string, Suite>>& suites() {
    static const std::vector<std::pair<std::string, Suite>> all{
        {"pb", suite_pb},
        {"szego-forms", suite_szego_forms},
        {"orthogonality", suite_orthogonality},
        {"folland", suite_folland},
        {"reproducing", suite_reproducing},
        {"bigraded-identity", suite_identity},
        {"asymptotics", suite_asymptotics},
        {"wallach", suite_wallach},
        {"semiclassical", suite_semiclassical},
    };
    return all;
}

}  // namespace

Output cmd_verify(const CliConfig& cfg, std::ostream& diag) {
    std::vector<std::string> selected = cfg.suites;
    if (selected.empty() || std::find(selected.begin(), selected.end(), "all") != selected.end()) {
        selected.clear();
        for (const auto& [name, fn] : suites())
            selected.push_back(name);
    }
    Output res;
    Json failures = Json::array();
    Json summary = Json::object();
    for (std::size_t si = 0; si < selected.size(); ++si) {
        const std::string name = selected[si] == "identity-6-5" ? "bigraded-identity" : selected[si];
        auto it = std::find_if(suites().begin(), suites().end(), [&](const auto& e) { return e.first == name; });
        if (it == suites().end())
            throw DomainError("unknown suite '" + name + "'");
        // each suite has its own stream so selecting suites never shifts the draws
        std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                          static_cast<std::uint32_t>(it - suites().begin())};
        std::mt19937_64 rng(seq);
        const std::vector<Case> cases = it->second(cfg, rng);
        int failed = 0;
        double worst = 0.0;
        for (const Case& c : cases) {
            Json r;
            r["suite"] = name;
            r["case"] = c.name;
            const Json rep = report_json(c.rep);
            for (auto& [k, v] : rep.items())
                r[k] = v;
            r["tolerance"] = c.tolerance;
            r["criterion"] = c.criterion;
            r["pass"] = c.pass;
            res.records.push_back(r);
            worst = std::max(worst, c.rep.rel_error);
            std::ostringstream line;
            line.precision(3);
            line << (c.pass ? "PASS " : "FAIL ") << name << " | " << c.name << " | rel_error " << c.rep.rel_error
                 << " (tol " << c.tolerance << ")";
            diag << line.str() << "\n";
            if (!c.pass) {
                ++failed;
                failures.push_back(Json{{"suite", name}, {"case", c.name}});
            }
        }
        summary[name] = Json{{"cases", cases.size()}, {"failed", failed}, {"max_rel_error", worst}};
        if (cases.empty())
            diag << "SKIP " << name << " | not applicable for n = " << cfg.n << "\n";
    }
    res.extra["summary"] = summary;
    res.extra["failures"] = failures;
    if (!failures.empty())
        res.code = kIdentityFailed;
    return res;
}

}  // namespace mhk::cli
