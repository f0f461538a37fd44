#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <string>
#include <tuple>

#include "extrapolation.hpp"
#include "mhk/kernels.hpp"
#include "mhk/quadrature.hpp"

namespace mhk {

namespace {

std::uint64_t key2(int p, int q) {
    return (static_cast<std::uint64_t>(p) << 32) | static_cast<std::uint32_t>(q);
}

std::uint64_t key4(int p, int q, int j, int m) {
    return (static_cast<std::uint64_t>(p) << 48) | (static_cast<std::uint64_t>(q) << 32) |
           (static_cast<std::uint64_t>(j) << 16) | static_cast<std::uint64_t>(m);
}

// log of Γ(h+l) + l Γ(h+l-1) = Γ(h+l-1)(h+2l-1), finite at h = 1, l = 0
double log_regularized_factor(double h, int l) {
    if (l == 0)
        return std::lgamma(h);
    return std::lgamma(h + l - 1.0) + std::log(h + 2.0 * l - 1.0);
}

}  // namespace

WeightSpec WeightSpec::power(double s) {
    if (!(s > -1.0) || !std::isfinite(s))
        throw DomainError("power weight needs s > -1, got " + std::to_string(s));
    WeightSpec w;
    w.kind = Kind::PowerWeight;
    w.s = s;
    return w;
}

void KernelParams::validate() const {
    if (n < 1)
        throw DomainError("dimension n must be at least 1");
    if (!(tol > 0.0))
        throw DomainError("tolerance must be positive");
    if (degree_cap < 0)
        throw DomainError("degree cap must be non-negative");
    if (!weight.is_hardy() && !(weight.s > -1.0))
        throw DomainError("power weight needs s > -1");
}

CoeffCache::CoeffCache(int n, WeightSpec weight, double tol) : n_(n), weight_(weight), tol_(tol) {
    if (n < 1)
        throw DomainError("CoeffCache: n must be at least 1");
}

double CoeffCache::compute_cpq(int p, int q) const {
    if (weight_.is_hardy())
        return 1.0;
    const int n = n_;
    const double s = weight_.s;
    const double c = p + q + n;
    const double g0 = gamma_ratio({p + n + 0.0, q + n + 0.0}, {n + 0.0, c});
    if (p == 0 || q == 0)  // 2F1 ≡ 1: a Beta integral
        return 0.5 * g0 * g0 * gamma_ratio({c, s + 1.0}, {c + s + 1.0});
    // t = 1 - (1-v)^3 turns the (1-t)^n log(1-t) endpoint term into a much
    // smoother one; the weight becomes 3 (1-v)^{3s+2}.
    auto integrand = [&](double v) {
        const double t = v * (3.0 - 3.0 * v + v * v);
        if (t == 0.0)
            return 0.0;
        const double f = g0 * gauss_2f1(p, q, c, std::min(t, 1.0)).value.real();
        return 1.5 * std::pow(t, c - 1.0) * f * f;
    };
    return integrate_jacobi(integrand, 3.0 * s + 2.0, std::max(tol_, 1e-14)).value;
}

double CoeffCache::cpq(int p, int q) {
    if (p < 0 || q < 0)
        throw DomainError("c_pq: negative index");
    if (p > q)
        std::swap(p, q);
    const auto k = key2(p, q);
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = cpq_.find(k);
        if (it != cpq_.end())
            return it->second;
    }
    const double v = compute_cpq(p, q);
    std::lock_guard<std::mutex> lock(mutex_);
    return cpq_.emplace(k, v).first->second;
}

double CoeffCache::apqjm(int p, int q, int j, int m) {
    if (p < 0 || q < 0 || j < 0 || m < 0)
        throw DomainError("A_pqjm: negative index");
    if (p > 0xffff || q > 0xffff || j > 0xffff || m > 0xffff)
        throw DomainError("A_pqjm: index too large");
    const auto k = key4(p, q, j, m);
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = apqjm_.find(k);
        if (it != apqjm_.end())
            return it->second;
    }
    const double n = n_;
    const double h = n + p + q;
    const double lgn = std::lgamma(n);
    CompensatedSum acc;
    for (int l = 0; l <= std::min(j, m); ++l) {
        double lg = std::lgamma(n + p + j) + std::lgamma(n + q + j) - lgn - std::lgamma(h + j + l);
        lg += std::lgamma(n + p + m) + std::lgamma(n + q + m) - lgn - std::lgamma(h + m + l);
        lg += log_regularized_factor(h, l) - lgn - std::lgamma(l + 1.0);
        // (-j)_l (-m)_l = j! m! / ((j-l)! (m-l)!)
        lg += std::lgamma(j + 1.0) - std::lgamma(j - l + 1.0) + std::lgamma(m + 1.0) -
              std::lgamma(m - l + 1.0);
        double term = std::exp(lg) / cpq(p + l, q + l);
        acc.add(l % 2 ? -term : term);
    }
    const double v = acc.value();
    std::lock_guard<std::mutex> lock(mutex_);
    return apqjm_.emplace(k, v).first->second;
}

CoeffCache& coeff_cache(const KernelParams& params) {
    params.validate();
    using Key = std::tuple<int, int, double, double>;
    static std::mutex mutex;
    static std::map<Key, std::unique_ptr<CoeffCache>> registry;
    const bool hardy = params.weight.is_hardy();
    const Key key{params.n, hardy ? 1 : 0, hardy ? 0.0 : params.weight.s, params.tol};
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = registry[key];
    if (!slot)
        slot = std::make_unique<CoeffCache>(params.n, params.weight, params.tol);
    return *slot;
}

double coeff_cpq(const KernelParams& params, int p, int q) {
    return coeff_cache(params).cpq(p, q);
}

CpqCrossCheck coeff_cpq_checked(const KernelParams& params, int p, int q) {
    CpqCrossCheck out;
    out.quadrature = coeff_cpq(params, p, q);
    if (params.weight.is_hardy()) {
        out.double_series = 1.0;
        out.series_converged = true;
        return out;
    }
    try {
        DoubleSeriesParams dp;
        dp.p = p;
        dp.q = q;
        dp.n = params.n;
        dp.s = params.weight.s;
        out.double_series = 0.5 * cpq_unit_double_series(dp, 1e-10).real();
        out.series_converged = true;
        out.rel_difference = std::fabs(out.double_series - out.quadrature) / out.quadrature;
    } catch (const NonConvergent&) {
        out.series_converged = false;
    }
    return out;
}

double coeff_apqjm(const KernelParams& params, int p, int q, int j, int m) {
    return coeff_cache(params).apqjm(p, q, j, m);
}

double apqjm_hardy_closed(int n, int p, int q, int j, int m) {
    if (n < 1 || p < 0 || q < 0 || j < 0 || m < 0)
        throw DomainError("apqjm_hardy_closed: invalid indices");
    const double a = n;
    return gamma_ratio({a + j + p, a + j + q, a + m + p, a + m + q},
                       {a, a, a, a + m + j + p + q});
}

double wallach_f(const KernelParams& params, int p, int q, double s, double tol) {
    const int n = params.n;
    if (p < 0 || q < 0 || (p == 0 && q == 0))
        throw DomainError("wallach_f: (p,q) must be a non-zero index");
    if (!(s > -n - 1.0))
        throw DomainError("wallach_f: s must exceed -n-1");
    const double h = n + p + q;
    const double g0 = gamma_ratio({n + p + 0.0, n + q + 0.0}, {n + 0.0, h});
    const bool finite = (p == 0 || q == 0);
    const int count = finite ? 1 : 8192;
    // G_pq = g0² Σ (u*u)_m t^{h-1+m}; differentiate n times and integrate
    // against (1-t)^{s+n} term by term.
    std::vector<double> terms = *detail::hypergeometric_square_coefficients(p, q, h, count);
    double beta = std::exp(std::lgamma(h - n) + std::lgamma(s + n + 1.0) - std::lgamma(h + s + 1.0));
    for (int m = 0; m < count; ++m) {
        double falling = 1.0;
        for (int i = 0; i < n; ++i)
            falling *= h - 1.0 + m - i;
        terms[m] *= g0 * g0 * falling * beta;
        beta *= (h + m - n) / (h + m + s + 1.0);
    }
    double ratio;
    if (finite) {
        ratio = terms[0];
    } else {
        const detail::LadderResult lim = detail::algebraic_series_limit(terms, n + s + 1.0);
        if (lim.error > tol * std::fabs(lim.value))
            throw NonConvergent("wallach_f: series for f_" + std::to_string(p) + std::to_string(q) +
                                " stalled at relative error " +
                                std::to_string(lim.error / std::fabs(lim.value)));
        ratio = lim.value;
    }
    ratio /= std::tgamma(static_cast<double>(n));
    if (!(ratio > 0.0))
        throw NonConvergent("wallach_f: non-positive series value");
    return 1.0 / ratio;
}

double cpq_asymptotic_leading(int n, double s, double p, double q) {
    if (!(p > 0.0 && q > 0.0))
        throw DomainError("cpq_asymptotic_leading: p and q must be positive");
    const double lead = gamma_ratio({2.0 * n + s + 1.0, n + s + 1.0, n + s + 1.0, s + 1.0},
                                    {n + 0.0, n + 0.0, 2.0 * n + 2.0 * s + 2.0});
    return lead * std::pow(p * q, -s - 1.0);
}

}  // namespace mhk
