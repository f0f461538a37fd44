#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "mhk/kernels.hpp"

namespace mhk {

namespace {

constexpr int kQuietShells = 3;

double szego_constant(int n) { return 1.0 / sphere_measure(n); }

void check_dim(int n, const BallPoint& z, const BallPoint& w, const char* who) {
    if (n < 1)
        throw DomainError(std::string(who) + ": n must be at least 1");
    if (z.dim() != n || w.dim() != n)
        throw DimensionMismatch(std::string(who) + ": points must lie in C^" + std::to_string(n));
}

// Geometric tail from the last few shell magnitudes.
double geometric_tail(const std::vector<double>& shells) {
    const std::size_t k = shells.size();
    if (k < 2)
        return k ? shells.back() : 0.0;
    double rho = 0.0;
    for (std::size_t i = (k > 4 ? k - 3 : 1); i < k; ++i)
        if (shells[i - 1] > 0.0)
            rho = std::max(rho, shells[i] / shells[i - 1]);
    if (shells.back() == 0.0)
        return 0.0;
    if (rho >= 1.0)
        return std::numeric_limits<double>::infinity();
    return shells.back() * rho / (1.0 - rho);
}

bool quiet_tail(const std::vector<double>& shells, double sum_abs, double tol) {
    if (static_cast<int>(shells.size()) < kQuietShells + 1)
        return false;
    for (std::size_t i = shells.size() - kQuietShells; i < shells.size(); ++i)
        if (shells[i] > tol * sum_abs)
            return false;
    return true;
}

// Σ_{p,q} S^{pq}(|z|) S^{pq}(|w|) H^{pq}(<z/|z|, w/|w|>) · weight(p,q), by shells
// d = p+q. Stops after kQuietShells negligible shells; at the cap either
// returns (allow_cap) or throws.
SeriesValue bigraded_sum(int n, const BallPoint& z, const BallPoint& w,
                         const std::function<double(int, int)>& weight, double tol, int cap,
                         bool allow_cap) {
    const double rz = std::sqrt(z.norm2()), rw = std::sqrt(w.norm2());
    Complex x{0.0, 0.0};
    if (rz > 0.0 && rw > 0.0) {
        x = inner(z, w) / (rz * rw);
        if (std::abs(x) > 1.0)
            x /= std::abs(x);
    }
    CompensatedComplexSum sum;
    std::vector<double> shells;
    const bool trivial = (rz == 0.0 || rw == 0.0);
    for (int d = 0; d <= cap; ++d) {
        Complex shell{0.0, 0.0};
        double shell_abs = 0.0;
        for (int p = 0; p <= d; ++p) {
            const int q = d - p;
            const double wt = weight(p, q);
            if (wt == 0.0)
                continue;
            const BigradedIndex idx{p, q};
            const double sz = radial_s(idx, n, rz), sw = radial_s(idx, n, rw);
            if (sz == 0.0 || sw == 0.0)
                continue;
            const Complex t = sz * sw * zonal_h(idx, n, x) * wt;
            shell += t;
            shell_abs += std::abs(t);
        }
        sum.add(shell);
        shells.push_back(shell_abs);
        const double scale = std::max(std::abs(sum.value()), std::numeric_limits<double>::min());
        if (trivial || quiet_tail(shells, scale, tol)) {
            SeriesValue out;
            out.value = sum.value();
            out.truncation_order = d;
            out.tail_estimate = trivial ? 0.0 : geometric_tail(shells);
            return out;
        }
    }
    SeriesValue out;
    out.value = sum.value();
    out.truncation_order = cap;
    out.tail_estimate = geometric_tail(shells);
    if (!allow_cap || !std::isfinite(out.tail_estimate))
        throw NonConvergent("bigraded series did not settle within degree " + std::to_string(cap));
    return out;
}

// Shells of the quadruple series truncated at total degree D. Every shell
// d <= D is complete.
struct QuadShells {
    std::vector<Complex> value;
};

QuadShells bergman_shells(CoeffCache& cache, int n, double x1, double y2, Complex x2, int D) {
    QuadShells out;
    out.value.assign(D + 1, Complex(0.0, 0.0));
    const double lgn = std::lgamma(static_cast<double>(n));
    const double r2 = std::abs(x2);
    const double log_r2 = r2 > 0.0 ? std::log(r2) : 0.0;
    const Complex phase_unit = r2 > 0.0 ? x2 / r2 : Complex(1.0, 0.0);
    const int pq_max = r2 > 0.0 ? D : 0;
    const int l_cap = (x1 > 0.0 && y2 > 0.0) ? D : 0;
    const double log_x1 = x1 > 0.0 ? std::log(x1) : 0.0;
    const double log_y2 = y2 > 0.0 ? std::log(y2) : 0.0;
    std::vector<double> U, V, conv;

    // u(j) = Γ(n+p+j)Γ(n+q+j) / (Γ(h+j+l)(j-l)!) x^j for j = l..l+len-1,
    // scaled by exp(half)
    auto fill = [&](std::vector<double>& out_vec, int p, int q, int l, double log_x,
                    int len, double half) {
        out_vec.resize(len);
        const double h = n + p + q;
        double lu = std::lgamma(n + p + l + 0.0) + std::lgamma(n + q + l + 0.0) -
                    std::lgamma(h + 2.0 * l) + (l > 0 ? l * log_x : 0.0) + half;
        out_vec[0] = std::exp(lu);
        for (int k = 1; k < len; ++k) {
            const int j = l + k - 1;
            lu += std::log((n + p + j) * (n + q + j + 0.0) / ((h + j + l) * (j + 1.0 - l))) + log_x;
            out_vec[k] = std::exp(lu);
        }
    };

    for (int d0 = 0; d0 <= pq_max; ++d0) {
        for (int p = 0; p <= d0; ++p) {
            const int q = d0 - p;
            const double h = n + p + q;
            const Complex phase = std::pow(phase_unit, p - q);
            for (int l = 0; d0 + 2 * l <= D && l <= l_cap; ++l) {
                const double c = cache.cpq(p + l, q + l);
                double L = d0 * log_r2 - std::lgamma(p + 1.0) - std::lgamma(q + 1.0);
                if (l == 0)
                    L += std::lgamma(h);
                else
                    L += std::lgamma(h + l - 1.0) + std::log(h + 2.0 * l - 1.0);
                L -= 3.0 * lgn + std::lgamma(l + 1.0) + std::log(c);
                const int rem = D - d0 - 2 * l;  // (j-l) + (m-l) <= rem
                const int len_u = x1 > 0.0 ? rem + 1 : 1;
                const int len_v = y2 > 0.0 ? rem + 1 : 1;
                fill(U, p, q, l, log_x1, len_u, 0.5 * L);
                fill(V, p, q, l, log_y2, len_v, 0.5 * L);
                conv.assign(rem + 1, 0.0);
                for (int a = 0; a < len_u; ++a) {
                    const double ua = U[a];
                    const int top = std::min(len_v, rem + 1 - a);
                    for (int b = 0; b < top; ++b)
                        conv[a + b] += ua * V[b];
                }
                const Complex f = (l % 2 ? -1.0 : 1.0) * phase;
                for (int k = 0; k <= rem; ++k) {
                    const int d = d0 + 2 * l + k;
                    out.value[d] += f * conv[k];
                }
            }
        }
    }
    return out;
}

}  // namespace

double poisson_szego(int n, const BallPoint& z, const SpherePoint& zeta) {
    if (n < 1 || z.dim() != n || zeta.dim() != n)
        throw DimensionMismatch("poisson_szego: points must lie in C^" + std::to_string(n));
    const double a = 1.0 - z.norm2();
    const double b = std::norm(1.0 - inner(z, zeta));
    return szego_constant(n) * std::pow(a, n) / std::pow(b, n);
}

SeriesValue szego_fd(int n, const BallPoint& z, const BallPoint& w, double tol) {
    check_dim(n, z, w, "szego_fd");
    if (z.norm2() > 0.95 * 0.95 || w.norm2() > 0.95 * 0.95)
        throw DomainError("szego_fd: |z| and |w| must not exceed 0.95");
    FD1Params prm;
    prm.a = prm.a_prime = prm.b1 = prm.b2 = prm.c = n;
    prm.x1 = z.norm2();
    prm.x2 = inner(z, w);
    prm.y1 = inner(w, z);
    prm.y2 = w.norm2();
    SeriesValue f = fd1(prm, tol);
    const double pref = szego_constant(n) * std::pow(1.0 - z.norm2(), n) * std::pow(1.0 - w.norm2(), n);
    f.value *= pref;
    f.tail_estimate *= pref;
    return f;
}

SeriesValue szego_2f1(int n, const BallPoint& z, const BallPoint& w, double tol) {
    check_dim(n, z, w, "szego_2f1");
    const double t1 = z.norm2();
    const Complex wz = inner(w, z);
    const Complex t2 = (t1 - wz) / (1.0 - wz);
    const Complex t3 = std::conj(t2);
    const double d = std::norm(1.0 - inner(z, w));
    const double t4 = 1.0 - (1.0 - t1) * (1.0 - w.norm2()) / d;

    CompensatedComplexSum sum;
    double tail = 0.0;
    int order = 0;
    for (int i1 = 0; i1 <= n; ++i1) {
        for (int i2 = 0; i2 <= n - i1; ++i2) {
            for (int j1 = 0; j1 <= n - i1; ++j1) {
                const double coef = pochhammer(-n, i1 + i2) * pochhammer(-n, i1 + j1) *
                                    pochhammer(n, i2) * pochhammer(n, j1) /
                                    (std::tgamma(i1 + 1.0) * std::tgamma(i2 + 1.0) *
                                     std::tgamma(j1 + 1.0) * pochhammer(n, i1 + i2 + j1));
                if (coef == 0.0)
                    continue;
                SeriesValue f = gauss_2f1(i2 + n, j1 + n, i1 + i2 + j1 + n, t4, tol);
                const Complex mono = std::pow(t1, i1) * std::pow(t2, i2) * std::pow(t3, j1);
                sum.add(coef * mono * f.value);
                tail += std::abs(coef * mono) * f.tail_estimate;
                order = std::max(order, f.truncation_order);
            }
        }
    }
    const double pref = szego_constant(n) * std::pow(1.0 - w.norm2(), n) / std::pow(d, n);
    SeriesValue out;
    out.value = Complex(pref * sum.value().real(), 0.0);
    out.tail_estimate = pref * tail;
    out.truncation_order = order;
    return out;
}

double szego_diagonal(int n, const BallPoint& z) {
    if (n < 1 || z.dim() != n)
        throw DimensionMismatch("szego_diagonal: point must lie in C^" + std::to_string(n));
    const double x = z.norm2();
    const double f = gauss_2f1(-n, -n, n, x).value.real();
    return szego_constant(n) * std::pow(1.0 - x, -n) * f;
}

double szego_orthogonal(int n, double r1, double r2) {
    if (n < 1)
        throw DomainError("szego_orthogonal: n must be at least 1");
    if (!(r1 >= 0.0 && r1 < 1.0 && r2 >= 0.0 && r2 < 1.0))
        throw DomainError("szego_orthogonal: radii must lie in [0, 1)");
    const double x = r1 * r1, y = r2 * r2;
    const double f = appell_f3(n, n, n, n, n, x, y).value.real();
    return szego_constant(n) * std::pow(1.0 - x, n) * std::pow(1.0 - y, n) * f;
}

SeriesValue bergman_kernel(const KernelParams& params, const BallPoint& z, const BallPoint& w) {
    params.validate();
    const int n = params.n;
    check_dim(n, z, w, "bergman_kernel");
    if (z.norm2() > 0.81 || w.norm2() > 0.81)
        throw DomainError("bergman_kernel: reliable only for max(|z|,|w|) <= 0.9");
    CoeffCache& cache = coeff_cache(params);
    const double x1 = z.norm2(), y2 = w.norm2();
    const Complex x2 = inner(z, w);
    const double pref = szego_constant(n) * std::pow(1.0 - x1, n) * std::pow(1.0 - y2, n);

    int D = std::min(24, params.degree_cap);
    while (true) {
        QuadShells sh = bergman_shells(cache, n, x1, y2, x2, D);
        CompensatedComplexSum sum;
        std::vector<double> mags;
        for (int d = 0; d <= D; ++d) {
            sum.add(sh.value[d]);
            mags.push_back(std::abs(sh.value[d]));
        }
        const double scale = std::max(std::abs(sum.value()), std::numeric_limits<double>::min());
        const bool trivial = (x1 == 0.0 && y2 == 0.0);
        if (trivial || quiet_tail(mags, scale, params.tol)) {
            SeriesValue out;
            out.value = pref * sum.value();
            out.truncation_order = D;
            out.tail_estimate = trivial ? 0.0 : pref * geometric_tail(mags);
            return out;
        }
        if (D >= params.degree_cap)
            throw NonConvergent("bergman_kernel: quadruple series unsettled at degree " +
                                std::to_string(D));
        D = std::min(2 * D, params.degree_cap);
    }
}

SeriesValue bergman_kernel_bigraded(const KernelParams& params, const BallPoint& z,
                                    const BallPoint& w) {
    params.validate();
    check_dim(params.n, z, w, "bergman_kernel_bigraded");
    CoeffCache& cache = coeff_cache(params);
    auto weight = [&](int p, int q) { return 1.0 / cache.cpq(p, q); };
    return bigraded_sum(params.n, z, w, weight, params.tol, params.degree_cap, false);
}

Complex hol_kernel(int n, double s, const BallPoint& z, const BallPoint& w) {
    check_dim(n, z, w, "hol_kernel");
    if (!(s > -1.0))
        throw DomainError("hol_kernel: s must exceed -1");
    const double c = gamma_ratio({n + s + 1.0}, {s + 1.0}) / std::pow(kPi, n);
    return c * std::pow(1.0 - inner(z, w), -(n + s + 1.0));
}

double harm_szego(int n, const BallPoint& z, const BallPoint& w) {
    check_dim(n, z, w, "harm_szego");
    const double a = z.norm2() * w.norm2();
    return szego_constant(n) * (1.0 - a) / std::pow(1.0 - 2.0 * inner(z, w).real() + a, n);
}

SeriesValue f_s_kernel(int n, int s, const BallPoint& z, const BallPoint& w, int degree_cap,
                       double tol) {
    check_dim(n, z, w, "f_s_kernel");
    if (s < -1)
        throw DomainError("f_s_kernel: s must be a non-negative integer (or -1)");
    if (degree_cap < 0)
        throw DomainError("f_s_kernel: negative degree cap");
    const double half = (n - 1) / 2.0;
    auto weight = [&](int p, int q) {
        return std::pow(p + half, s + 1) * std::pow(q + half, s + 1);
    };
    return bigraded_sum(n, z, w, weight, tol, degree_cap, true);
}

double semiclassical_ratio(int n, double s, const BallPoint& z, double tol) {
    if (!(s > 0.0))
        throw DomainError("semiclassical_ratio: s must be positive");
    if (z.norm2() > 0.36 + 1e-12)
        throw DomainError("semiclassical_ratio: |z| must not exceed 0.6");
    KernelParams params;
    params.n = n;
    params.weight = WeightSpec::power(s);
    params.tol = tol;
    params.degree_cap = 1000;
    const double k = bergman_kernel_bigraded(params, z, z).real();
    return std::pow(k, 1.0 / s) * (1.0 - z.norm2());
}

}  // namespace mhk
