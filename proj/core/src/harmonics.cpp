#include "mhk/harmonics.hpp"

#include <cmath>
#include <functional>

namespace mhk {

namespace {

// All multi-indices of length n with |ν| = total.
void for_each_multi_index(int n, int total, const std::function<void(const MultiIndex&)>& fn) {
    MultiIndex idx(n, 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == n - 1) {
            idx[pos] = left;
            fn(idx);
            return;
        }
        for (int k = left; k >= 0; --k) {
            idx[pos] = k;
            rec(pos + 1, left - k);
        }
    };
    if (n == 0)
        return;
    rec(0, total);
}

// log(|ν|! / ν!)
double log_multinomial(const MultiIndex& idx) {
    int total = 0;
    double s = 0.0;
    for (int k : idx) {
        total += k;
        s -= std::lgamma(k + 1.0);
    }
    return s + std::lgamma(total + 1.0);
}

Complex monomial(const CVector& v, const MultiIndex& idx, bool conjugate) {
    Complex out{1.0, 0.0};
    for (std::size_t j = 0; j < idx.size(); ++j) {
        Complex base = conjugate ? std::conj(v[j]) : v[j];
        for (int k = 0; k < idx[j]; ++k)
            out *= base;
    }
    return out;
}

// H^{pq}(x) = Σ_k g_k x^{a_k} conj(x)^{b_k}
struct ZonalTerm {
    double g;
    int a;
    int b;
};

std::vector<ZonalTerm> zonal_terms(BigradedIndex idx, int n) {
    const int p = idx.p, q = idx.q;
    const double norm = 1.0 / sphere_measure(n);
    std::vector<ZonalTerm> out;
    if (n == 1) {
        const double c = 1.0 / (2.0 * kPi);
        if (q == 0)
            out.push_back({c, p, 0});
        else if (p == 0)
            out.push_back({c, 0, q});
        return out;
    }
    const int hi = std::max(p, q), lo = std::min(p, q);
    // (-1)^lo (n+hi+lo-1) (n+hi-2)! / ((n-1)! lo! (hi-lo)!)
    double lead = (n + hi + lo - 1.0) *
                  std::exp(std::lgamma(n + hi - 1.0) - std::lgamma(n + 0.0) -
                           std::lgamma(lo + 1.0) - std::lgamma(hi - lo + 1.0));
    if (lo % 2 == 1)
        lead = -lead;
    double f = 1.0;
    for (int k = 0; k <= lo; ++k) {
        const double g = norm * lead * f;
        if (p >= q)
            out.push_back({g, hi - lo + k, k});
        else
            out.push_back({g, k, hi - lo + k});
        f *= (-lo + k) * (n + hi - 1.0 + k) / ((hi - lo + 1.0 + k) * (k + 1.0));
    }
    return out;
}

}  // namespace

double sphere_measure(int n) { return 2.0 * std::pow(kPi, n) / std::tgamma(static_cast<double>(n)); }

double harmonic_dimension(BigradedIndex idx, int n) {
    if (idx.p < 0 || idx.q < 0 || n < 1)
        throw DomainError("harmonic_dimension: invalid index");
    if (n == 1)
        return (idx.p == 0 || idx.q == 0) ? 1.0 : 0.0;
    const int p = idx.p, q = idx.q;
    // an integer; round away the lgamma noise
    return std::round((n + p + q - 1.0) *
           std::exp(std::lgamma(n + p - 1.0) + std::lgamma(n + q - 1.0) - std::lgamma(p + 1.0) -
                    std::lgamma(q + 1.0) - std::lgamma(n + 0.0) - std::lgamma(n - 1.0)));
}

Complex zonal_h(BigradedIndex idx, int n, Complex z) {
    if (n < 1 || idx.p < 0 || idx.q < 0)
        throw DomainError("zonal_h: invalid index");
    if (std::abs(z) > 1.0 + 1e-12)
        throw DomainError("zonal_h: |z| > 1");
    if (n == 1) {
        if (idx.q == 0)
            return std::pow(z, idx.p) / (2.0 * kPi);
        if (idx.p == 0)
            return std::pow(std::conj(z), idx.q) / (2.0 * kPi);
        return 0.0;
    }
    if (idx.p < idx.q)
        return zonal_h({idx.q, idx.p}, n, std::conj(z));
    const int p = idx.p, q = idx.q;
    double lead = (n + p + q - 1.0) *
                  std::exp(std::lgamma(n + p - 1.0) - std::lgamma(n + 0.0) -
                           std::lgamma(q + 1.0) - std::lgamma(p - q + 1.0));
    if (q % 2 == 1)
        lead = -lead;
    const double norm = 1.0 / sphere_measure(n);
    Complex f = gauss_2f1(-q, n + p - 1.0, p - q + 1.0, std::norm(z)).value;
    Complex zp{1.0, 0.0};
    for (int k = 0; k < p - q; ++k)
        zp *= z;
    return norm * lead * zp * f;
}

double radial_s(BigradedIndex idx, int n, double r) {
    if (!(r >= 0.0 && r <= 1.0))
        throw DomainError("radial_s: r must lie in [0, 1]");
    if (idx.p < 0 || idx.q < 0 || n < 1)
        throw DomainError("radial_s: invalid index");
    const int p = idx.p, q = idx.q;
    if (p + q == 0)
        return 1.0;
    if (r == 0.0)
        return 0.0;
    const double c = p + q + n;
    const double inv_f1 = gamma_ratio({p + n + 0.0, q + n + 0.0}, {n + 0.0, c});
    const double f = gauss_2f1(p, q, c, r * r).value.real();
    return std::pow(r, p + q) * f * inv_f1;
}

double sphere_monomial_integral(const MonomialPair& pair, int n) {
    if (static_cast<int>(pair.nu.size()) != n || static_cast<int>(pair.mu.size()) != n)
        throw DimensionMismatch("monomial multi-index length differs from n");
    if (pair.nu != pair.mu)
        return 0.0;
    int total = 0;
    double lg = 0.0;
    for (int k : pair.nu) {
        total += k;
        lg += std::lgamma(k + 1.0);
    }
    // ν! / (n)_{|ν|} = ν! Γ(n) / Γ(n+|ν|)
    return std::exp(lg + std::lgamma(n + 0.0) - std::lgamma(n + total + 0.0)) * sphere_measure(n);
}

Complex sphere_poly_integral(const std::vector<PolyTerm>& poly, int n) {
    CompensatedComplexSum s;
    for (const auto& t : poly)
        if (t.nu == t.mu)
            s.add(t.coefficient * sphere_monomial_integral({t.nu, t.mu}, n));
    return s.value();
}

Complex sphere_poly_integral(const SpherePoly& poly, int n) {
    CompensatedComplexSum s;
    for (const auto& [key, c] : poly)
        if (key.first == key.second)
            s.add(c * sphere_monomial_integral({key.first, key.second}, n));
    return s.value();
}

SpherePoly poly_multiply(const SpherePoly& a, const SpherePoly& b) {
    SpherePoly out;
    for (const auto& [ka, ca] : a) {
        for (const auto& [kb, cb] : b) {
            MultiIndex nu = ka.first, mu = ka.second;
            for (std::size_t j = 0; j < nu.size(); ++j) {
                nu[j] += kb.first[j];
                mu[j] += kb.second[j];
            }
            out[{nu, mu}] += ca * cb;
        }
    }
    return out;
}

Complex poly_evaluate(const SpherePoly& poly, const CVector& eta) {
    CompensatedComplexSum s;
    for (const auto& [key, c] : poly)
        s.add(c * monomial(eta, key.first, false) * monomial(eta, key.second, true));
    return s.value();
}

SpherePoly zonal_poly(BigradedIndex idx, int n, const CVector& zeta, bool eta_first) {
    if (static_cast<int>(zeta.size()) != n)
        throw DimensionMismatch("zonal_poly: point dimension differs from n");
    SpherePoly out;
    for (const ZonalTerm& t : zonal_terms(idx, n)) {
        // x = <ζ,η> = Σ ζ_j conj(η_j); with eta_first, x = <η,ζ> = Σ η_j conj(ζ_j).
        // x^a and conj(x)^b expand by the multinomial theorem.
        for_each_multi_index(n, t.a, [&](const MultiIndex& ia) {
            const double la = log_multinomial(ia);
            const Complex za = monomial(zeta, ia, eta_first);
            for_each_multi_index(n, t.b, [&](const MultiIndex& ib) {
                const double lb = log_multinomial(ib);
                const Complex zb = monomial(zeta, ib, !eta_first);
                const Complex c = t.g * std::exp(la + lb) * za * zb;
                // powers of η: eta_first puts x^a on η, otherwise on conj(η)
                MultiIndex nu = eta_first ? ia : ib;
                MultiIndex mu = eta_first ? ib : ia;
                out[{nu, mu}] += c;
            });
        });
    }
    return out;
}

Complex poisson_partial_sum(int n, const BallPoint& z, const SpherePoint& eta, int degree_cap) {
    if (z.dim() != n || eta.dim() != n)
        throw DimensionMismatch("poisson_partial_sum: dimension mismatch");
    const double r = std::sqrt(z.norm2());
    const double h00 = 1.0 / sphere_measure(n);
    if (r == 0.0)
        return h00;
    const Complex x = inner(z, eta) / r;
    CompensatedComplexSum s;
    for (int d = 0; d <= degree_cap; ++d)
        for (int p = 0; p <= d; ++p) {
            const BigradedIndex idx{p, d - p};
            if (n == 1 && idx.p * idx.q != 0)
                continue;
            s.add(radial_s(idx, n, r) * zonal_h(idx, n, x));
        }
    return s.value();
}

std::pair<double, double> bigraded_identity_sides(int n, int m) {
    if (n < 1 || m < 0)
        throw DomainError("bigraded_identity_sides: invalid arguments");
    CompensatedSum lhs;
    for (int p = 0; p <= m; ++p)
        for (int q = 0; p + q <= m; ++q) {
            const double dim = harmonic_dimension({p, q}, n);
            if (dim == 0.0)
                continue;
            for (int j = 0; p + q + j <= m; ++j) {
                const int k = m - p - q - j;
                // coefficient of t^j in ΓΓ(n+p,n+q / n,n+p+q) 2F1(n+p,n+q;n+p+q;t),
                // which carries the 1/j! of the series
                const double gj = gamma_ratio({p + n + j + 0.0, q + n + j + 0.0},
                                              {n + 0.0, p + q + n + j + 0.0, j + 1.0});
                const double gk = gamma_ratio({p + n + k + 0.0, q + n + k + 0.0},
                                              {n + 0.0, p + q + n + k + 0.0, k + 1.0});
                lhs.add(gj * gk * dim);
            }
        }
    const double p2n = pochhammer(2.0 * n, m);
    const double rhs = p2n * p2n / (std::tgamma(m + 1.0) * pochhammer(n, m));
    return {lhs.value(), rhs};
}

}  // namespace mhk
