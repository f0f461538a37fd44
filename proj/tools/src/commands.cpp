#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "cli_internal.hpp"

namespace mhk::cli {

namespace {

struct Axis {
    std::string name;
    std::vector<double> values;
};

Axis parse_axis(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw DomainError("grid axis '" + spec + "' must look like name:start,stop,count");
    Axis ax;
    ax.name = spec.substr(0, colon);
    static const std::vector<std::string> known{"r1", "r2", "angle", "U", "V", "absZ"};
    if (std::find(known.begin(), known.end(), ax.name) == known.end())
        throw DomainError("unknown grid axis '" + ax.name + "'");
    std::stringstream ss(spec.substr(colon + 1));
    std::string a, b, c;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c, ','))
        throw DomainError("grid axis '" + spec + "' must look like name:start,stop,count");
    const double lo = parse_complex(a).real(), hi = parse_complex(b).real();
    const int count = static_cast<int>(parse_complex(c).real());
    if (count < 1)
        throw DomainError("grid axis count must be positive");
    for (int i = 0; i < count; ++i)
        ax.values.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
    return ax;
}

struct Node {
    std::map<std::string, double> coords;  // grid coordinates, empty for a single point
    CVector z;
    CVector w;
    bool skip = false;
};

// (U, V, |Z|) -> z = √U e1 and w = φ_z(v) with |v|² = V, <z, v> = |Z|.
bool uvz_points(int n, double U, double V, double absZ, CVector& z, CVector& w) {
    if (n < 2)
        throw DomainError("U/V/absZ grids need n >= 2");
    if (U < 0.0 || V < 0.0 || absZ < 0.0 || U >= 1.0 || V >= 1.0)
        return false;
    if (absZ * absZ > U * V + 1e-15 || (U == 0.0 && absZ > 0.0))
        return false;
    CVector v(n, Complex(0.0, 0.0));
    v[0] = U > 0.0 ? absZ / std::sqrt(U) : 0.0;
    v[1] = std::sqrt(std::max(0.0, V - std::norm(v[0])));
    z.assign(n, Complex(0.0, 0.0));
    z[0] = std::sqrt(U);
    w = moebius(BallPoint(z), BallPoint(v)).coords();
    return true;
}

std::vector<Node> build_nodes(const CliConfig& cfg) {
    if (cfg.grid.empty()) {
        Node nd;
        nd.z = parse_point(cfg.z, cfg.n);
        nd.w = parse_point(cfg.w, cfg.n);
        return {nd};
    }
    std::vector<Axis> axes;
    for (const auto& g : cfg.grid)
        axes.push_back(parse_axis(g));
    bool uvz = false, polar = false;
    for (const auto& a : axes) {
        if (a.name == "U" || a.name == "V" || a.name == "absZ")
            uvz = true;
        else
            polar = true;
    }
    if (uvz && polar)
        throw DomainError("grid mixes r1/r2/angle with U/V/absZ axes");

    std::vector<Node> nodes;
    std::vector<std::size_t> idx(axes.size(), 0);
    // last axis varies fastest
    while (true) {
        Node nd;
        for (std::size_t a = 0; a < axes.size(); ++a)
            nd.coords[axes[a].name] = axes[a].values[idx[a]];
        auto get = [&](const char* k) { return nd.coords.count(k) ? nd.coords.at(k) : 0.0; };
        if (uvz) {
            nd.skip = !uvz_points(cfg.n, get("U"), get("V"), get("absZ"), nd.z, nd.w);
        } else {
            const double r1 = get("r1"), r2 = get("r2"), th = get("angle");
            nd.z.assign(cfg.n, Complex(0.0, 0.0));
            nd.w.assign(cfg.n, Complex(0.0, 0.0));
            nd.z[0] = r1;
            if (cfg.n == 1) {
                nd.w[0] = std::polar(r2, th);
            } else {
                nd.w[0] = r2 * std::cos(th);
                nd.w[1] = r2 * std::sin(th);
            }
        }
        nodes.push_back(std::move(nd));
        std::size_t a = axes.size();
        while (a > 0) {
            --a;
            if (++idx[a] < axes[a].values.size())
                break;
            idx[a] = 0;
            if (a == 0)
                return nodes;
        }
        if (axes.empty())
            return nodes;
    }
}

SeriesValue evaluate(const CliConfig& cfg, const CVector& zc, const CVector& wc) {
    const int n = cfg.n;
    const std::string& k = cfg.kernel;
    auto exact = [](double v) {
        SeriesValue sv;
        sv.value = v;
        return sv;
    };
    if (k == "poisson")
        return exact(poisson_szego(n, BallPoint(zc), SpherePoint(wc)));
    const BallPoint z(zc), w(wc);
    if (k == "szego" || k == "szego-2f1")
        return szego_2f1(n, z, w, std::max(cfg.tol, 1e-15));
    if (k == "szego-fd")
        return szego_fd(n, z, w, std::max(cfg.tol, 1e-15));
    if (k == "szego-diagonal")
        return exact(szego_diagonal(n, z));
    if (k == "szego-orthogonal")
        return exact(szego_orthogonal(n, std::sqrt(z.norm2()), std::sqrt(w.norm2())));
    if (k == "szego-bruteforce") {
        const double r = std::sqrt(std::max(z.norm2(), w.norm2()));
        if (r > 0.6)
            throw DomainError("szego-bruteforce needs |z|, |w| <= 0.6");
        return szego_bruteforce(n, z, w, bruteforce_degree(r, std::max(cfg.tol, 1e-15)));
    }
    if (k == "bergman")
        return bergman_kernel(cfg.kernel_params(), z, w);
    if (k == "bergman-bigraded")
        return bergman_kernel_bigraded(cfg.kernel_params(), z, w);
    if (k == "fs")
        return f_s_kernel(n, cfg.order, z, w, cfg.degree_cap, std::max(cfg.tol, 1e-15));
    if (k == "hol") {
        if (cfg.hardy)
            throw DomainError("hol kernel needs a power weight");
        SeriesValue sv;
        sv.value = hol_kernel(n, cfg.s.value_or(0.0), z, w);
        return sv;
    }
    if (k == "harm")
        return exact(harm_szego(n, z, w));
    throw DomainError("unknown kernel " + k);
}

int code_for(const std::exception_ptr& e) {
    try {
        std::rethrow_exception(e);
    } catch (const NonConvergent&) {
        return kNonConvergent;
    } catch (const QuadratureFailure&) {
        return kNonConvergent;
    } catch (const Error&) {
        return kDomainError;
    } catch (...) {
        return kDomainError;
    }
}

std::string message_of(const std::exception_ptr& e) {
    try {
        std::rethrow_exception(e);
    } catch (const std::exception& ex) {
        return ex.what();
    } catch (...) {
        return "unknown error";
    }
}

std::string point_text(const CVector& v) {
    std::ostringstream os;
    os.precision(6);
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i)
        os << (i ? ", " : "") << v[i].real() << (v[i].imag() < 0 ? "" : "+") << v[i].imag() << "i";
    os << ")";
    return os.str();
}

}  // namespace

Output cmd_eval(const CliConfig& cfg, std::ostream& diag) {
    if (cfg.kernel == "bergman" || cfg.kernel == "bergman-bigraded")
        cfg.kernel_params().validate();
    const std::vector<Node> nodes = build_nodes(cfg);

    std::vector<SeriesValue> values(nodes.size());
    std::vector<std::exception_ptr> errors(nodes.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < nodes.size(); i = next++) {
            if (nodes[i].skip)
                continue;
            try {
                values[i] = evaluate(cfg, nodes[i].z, nodes[i].w);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t workers =
        std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), nodes.size());
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < workers; ++t)
        pool.emplace_back(worker);
    worker();
    for (auto& th : pool)
        th.join();

    Output res;
    std::size_t skipped = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].skip) {
            ++skipped;
            continue;
        }
        Json r;
        r["index"] = i;
        if (!nodes[i].coords.empty()) {
            Json g = Json::object();
            for (const auto& [k, v] : nodes[i].coords)
                g[k] = v;
            r["node"] = g;
        }
        r["z"] = to_json(nodes[i].z);
        r["w"] = to_json(nodes[i].w);
        r["kernel"] = cfg.kernel;
        if (errors[i]) {
            const int code = code_for(errors[i]);
            if (res.code == kOk)
                res.code = code;
            const std::string msg = message_of(errors[i]);
            diag << "point " << i << " z=" << point_text(nodes[i].z) << " w=" << point_text(nodes[i].w)
                 << ": " << msg << "\n";
            r["value"] = nullptr;
            r["tail_estimate"] = nullptr;
            r["truncation_order"] = nullptr;
            r["error"] = msg;
        } else {
            r["value"] = to_json(values[i].value);
            r["tail_estimate"] = values[i].tail_estimate;
            r["truncation_order"] = values[i].truncation_order;
        }
        res.records.push_back(r);
    }
    if (skipped)
        diag << skipped << " grid nodes outside |Z|^2 <= UV skipped\n";
    return res;
}

Output cmd_coeffs(const CliConfig& cfg, std::ostream& diag) {
    (void)diag;
    Output res;
    if (cfg.wallach) {
        if (cfg.hardy)
            throw DomainError("--wallach needs --s");
        const double s = cfg.s.value_or(0.0);
        KernelParams wp;
        wp.n = cfg.n;
        wp.tol = cfg.tol;
        const double wtol = 1e-6;
        Json r;
        r["p"] = cfg.p;
        r["q"] = cfg.q;
        r["s"] = s;
        r["f_pq"] = wallach_f(wp, cfg.p, cfg.q, s, wtol);
        r["tail_estimate"] = wtol * r["f_pq"].get<double>();
        res.records.push_back(r);
        return res;
    }
    const KernelParams kp = cfg.kernel_params();
    for (int p = 0; p <= cfg.pmax; ++p) {
        for (int q = 0; q <= cfg.qmax; ++q) {
            Json r;
            r["kind"] = "c_pq";
            r["p"] = p;
            r["q"] = q;
            const CpqCrossCheck cc = coeff_cpq_checked(kp, p, q);
            r["value"] = cc.quadrature;
            if (kp.weight.is_hardy()) {
                r["tail_estimate"] = 0.0;
            } else if (cc.series_converged) {
                r["double_series"] = cc.double_series;
                r["tail_estimate"] = std::fabs(cc.double_series - cc.quadrature);
            } else {
                r["double_series"] = nullptr;
                r["tail_estimate"] = cfg.tol * cc.quadrature;
            }
            if (cfg.asymptotic && !kp.weight.is_hardy()) {
                if (p > 0 && q > 0)
                    r["leading_ratio"] = cc.quadrature / cpq_asymptotic_leading(cfg.n, kp.weight.s, p, q);
                else
                    r["leading_ratio"] = nullptr;
            }
            res.records.push_back(r);
        }
    }
    for (int p = 0; p <= cfg.pmax; ++p)
        for (int q = 0; q <= cfg.qmax; ++q)
            for (int j = 0; j <= cfg.slice; ++j)
                for (int m = 0; m <= cfg.slice; ++m) {
                    Json r;
                    r["kind"] = "A_pqjm";
                    r["p"] = p;
                    r["q"] = q;
                    r["j"] = j;
                    r["m"] = m;
                    const double a = coeff_apqjm(kp, p, q, j, m);
                    r["value"] = a;
                    r["tail_estimate"] = kp.weight.is_hardy() ? 0.0 : cfg.tol * std::fabs(a);
                    res.records.push_back(r);
                }
    return res;
}

}  // namespace mhk::cli
