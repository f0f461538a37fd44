#include "mhk/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <math.h>
#include <string>

namespace mhk {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxTerms = 100000;
constexpr double kIntegerGap = 1e-8;

struct Partial {
    Complex value{0.0, 0.0};
    double abs_sum = 0.0;  // sum of |terms|, for the rounding estimate
    double tail = 0.0;
    int terms = 0;
};

double rounding(const Partial& p) { return 4.0 * kEps * p.abs_sum; }

std::string fmt_params(double a, double b, double c, Complex z) {
    return "2F1(" + std::to_string(a) + ", " + std::to_string(b) + "; " + std::to_string(c) +
           "; " + std::to_string(z.real()) + (z.imag() < 0 ? "" : "+") + std::to_string(z.imag()) +
           "i)";
}

// Terms (a)_k (b)_k / ((c)_k k!) z^k.
Partial direct_series(double a, double b, double c, Complex z, double tol) {
    bool terminating = false;
    long last = kMaxTerms;
    if (is_nonpositive_integer(a)) {
        terminating = true;
        last = std::min<long>(last, static_cast<long>(-a));
    }
    if (is_nonpositive_integer(b)) {
        terminating = true;
        last = std::min<long>(last, static_cast<long>(-b));
    }
    if (is_nonpositive_integer(c) && (!terminating || last > -c))
        throw DomainError("c is a non-positive integer in " + fmt_params(a, b, c, z));

    Partial out;
    CompensatedComplexSum sum;
    Complex t{1.0, 0.0};
    sum.add(t);
    out.abs_sum = 1.0;
    const double az = std::abs(z);

    if (terminating) {
        for (long k = 0; k < last; ++k) {
            t *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
            sum.add(t);
            out.abs_sum += std::abs(t);
        }
        out.value = sum.value();
        out.terms = static_cast<int>(last + 1);
        return out;
    }
    if (az >= 1.0 && !(az == 1.0 && c - a - b > 0.0))
        throw DomainError("series diverges for " + fmt_params(a, b, c, z));

    const double target = std::max(tol, kEps);
    for (long k = 0; k < kMaxTerms; ++k) {
        t *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
        sum.add(t);
        out.abs_sum += std::abs(t);
        const double kk = static_cast<double>(k + 1);
        double ratio = std::fabs((a + kk) * (b + kk) / ((c + kk) * (kk + 1.0))) * az;
        ratio = std::max(ratio, az);
        if (ratio >= 1.0)
            continue;
        double tail = std::abs(t) * ratio / (1.0 - ratio);
        if (az == 1.0)
            tail = std::abs(t) * kk / std::max(c - a - b, 1e-3);
        double scale = std::abs(sum.value());
        if (tail <= target * scale || tail <= kEps * out.abs_sum * 1e-2 || tail == 0.0) {
            out.value = sum.value();
            out.tail = tail;
            out.terms = static_cast<int>(k + 2);
            return out;
        }
    }
    throw NonConvergent("no convergence within " + std::to_string(kMaxTerms) + " terms for " +
                        fmt_params(a, b, c, z));
}

// Non-integer m = c - a - b, series in w = 1 - z.
Partial connection_generic(double a, double b, double c, Complex z, double tol) {
    const double m = c - a - b;
    const Complex w = 1.0 - z;
    double g1 = GammaRatio{{c, m}, {c - a, c - b}}.value();
    double g2 = GammaRatio{{c, -m}, {a, b}}.value();
    Partial out;
    Partial s1, s2;
    if (g1 != 0.0)
        s1 = direct_series(a, b, 1.0 - m, w, tol);
    if (g2 != 0.0)
        s2 = direct_series(c - a, c - b, 1.0 + m, w, tol);
    Complex wm = std::pow(w, m);
    out.value = g1 * s1.value + g2 * wm * s2.value;
    out.abs_sum = std::fabs(g1) * s1.abs_sum + std::fabs(g2) * std::abs(wm) * s2.abs_sum;
    out.tail = std::fabs(g1) * s1.tail + std::fabs(g2) * std::abs(wm) * s2.tail;
    out.terms = std::max(s1.terms, s2.terms);
    return out;
}

// Integer m >= 0 with c = a + b + m (logarithmic case), series in w = 1 - z.
Partial connection_log(double a, double b, int m, Complex z, double tol) {
    const double c = a + b + m;
    const Complex w = 1.0 - z;
    const Complex logw = std::log(w);
    Partial out;
    CompensatedComplexSum total;

    if (m > 0) {
        double pre = GammaRatio{{static_cast<double>(m), c}, {a + m, b + m}}.value();
        if (pre != 0.0) {
            Complex coef{1.0, 0.0};
            for (int k = 0; k < m; ++k) {
                total.add(pre * coef);
                out.abs_sum += std::fabs(pre) * std::abs(coef);
                coef *= (a + k) * (b + k) / ((k + 1.0) * (1.0 - m + k)) * w;
            }
        }
    }

    double pre = rgamma(a) * rgamma(b);
    if (pre != 0.0) {
        int sign_c = 0;
        double lg = log_abs_gamma(c, &sign_c);
        // Γ(c)/(Γ(a)Γ(b)) assembled in log space
        int sa = 0, sb = 0;
        double la = log_abs_gamma(a, &sa);
        double lb = log_abs_gamma(b, &sb);
        pre = sign_c * sa * sb * std::exp(lg - la - lb);
        Complex lead = -std::pow(-1.0, m) * pre * std::pow(w, m);
        double lead_abs = std::abs(lead);

        // e_k = (a+m)_k (b+m)_k / (k! (k+m)!), starting from 1/m!
        double e = std::exp(-std::lgamma(m + 1.0));
        double psi1 = -kEulerGamma;
        double psi2 = digamma(m + 1.0);
        double psia = digamma(a + m);
        double psib = digamma(b + m);
        Complex wk{1.0, 0.0};
        const double aw = std::abs(w);
        const double target = std::max(tol, kEps);
        CompensatedComplexSum series;
        double abs_series = 0.0;
        bool converged = false;
        for (int k = 0; k < kMaxTerms; ++k) {
            Complex term = e * wk * (logw - psi1 - psi2 + psia + psib);
            series.add(term);
            abs_series += std::abs(e * wk) * (std::abs(logw) + std::fabs(psi1) + std::fabs(psi2) +
                                              std::fabs(psia) + std::fabs(psib));
            const double kk = k;
            double ratio =
                std::fabs((a + m + kk) * (b + m + kk) / ((kk + 1.0) * (kk + m + 1.0))) * aw;
            ratio = std::max(ratio, aw);
            e *= (a + m + kk) * (b + m + kk) / ((kk + 1.0) * (kk + m + 1.0));
            wk *= w;
            psi1 += 1.0 / (kk + 1.0);
            psi2 += 1.0 / (kk + m + 1.0);
            psia += 1.0 / (a + m + kk);
            psib += 1.0 / (b + m + kk);
            if (ratio < 1.0 && k > 2) {
                double next = std::abs(e * wk) *
                              (std::abs(logw) + std::fabs(psi1) + std::fabs(psi2) +
                               std::fabs(psia) + std::fabs(psib));
                double tail = next / (1.0 - ratio);
                double scale = std::abs(series.value());
                if (tail <= target * scale || tail <= kEps * abs_series * 1e-2 || tail == 0.0) {
                    out.tail = lead_abs * tail;
                    out.terms = k + 1;
                    converged = true;
                    break;
                }
            }
        }
        if (!converged)
            throw NonConvergent("logarithmic continuation did not converge for " +
                                fmt_params(a, b, c, z));
        total.add(lead * series.value());
        out.abs_sum += lead_abs * abs_series;
    } else {
        out.terms = m;
    }
    out.value = total.value();
    return out;
}

Partial connection(double a, double b, double c, Complex z, double tol) {
    const double m = c - a - b;
    const double mr = std::nearbyint(m);
    if (std::fabs(m - mr) > kIntegerGap)
        return connection_generic(a, b, c, z, tol);
    const int mi = static_cast<int>(mr);
    if (mi >= 0)
        return connection_log(a, b, mi, z, tol);
    // Euler: 2F1(a,b;c;z) = (1-z)^(c-a-b) 2F1(c-a,c-b;c;z), which flips the sign of m.
    const double ca = c - a, cb = c - b;
    Complex pre = std::pow(1.0 - z, m);
    Partial inner;
    if (is_nonpositive_integer(ca) || is_nonpositive_integer(cb))
        inner = direct_series(ca, cb, c, z, tol);
    else
        inner = connection_log(ca, cb, -mi, z, tol);
    inner.value *= pre;
    inner.abs_sum *= std::abs(pre);
    inner.tail *= std::abs(pre);
    return inner;
}

SeriesValue finish(const Partial& p) {
    SeriesValue out;
    out.value = p.value;
    out.truncation_order = p.terms;
    out.tail_estimate = p.tail + rounding(p);
    return out;
}

}  // namespace

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::nearbyint(x); }

double log_abs_gamma(double x, int* sign) {
    if (is_nonpositive_integer(x))
        throw DomainError("Gamma has a pole at " + std::to_string(x));
    int s = 1;
    double r = ::lgamma_r(x, &s);
    if (sign)
        *sign = s;
    return r;
}

double rgamma(double x) {
    if (is_nonpositive_integer(x))
        return 0.0;
    int s = 1;
    double lg = log_abs_gamma(x, &s);
    return s * std::exp(-lg);
}

double GammaRatio::value() const {
    std::vector<double> num_poles, den_poles;
    double log_sum = 0.0;
    int sign = 1;
    for (double x : numerator_args) {
        if (is_nonpositive_integer(x)) {
            num_poles.push_back(-x);
            continue;
        }
        int s = 1;
        log_sum += log_abs_gamma(x, &s);
        sign *= s;
    }
    for (double x : denominator_args) {
        if (is_nonpositive_integer(x)) {
            den_poles.push_back(-x);
            continue;
        }
        int s = 1;
        log_sum -= log_abs_gamma(x, &s);
        sign *= s;
    }
    if (num_poles.size() > den_poles.size())
        throw DomainError("unmatched Gamma pole in numerator");
    if (num_poles.size() < den_poles.size())
        return 0.0;
    for (std::size_t i = 0; i < num_poles.size(); ++i) {
        double mm = num_poles[i], kk = den_poles[i];
        log_sum += std::lgamma(kk + 1.0) - std::lgamma(mm + 1.0);
        if (static_cast<long>(std::fabs(mm - kk)) % 2 == 1)
            sign = -sign;
    }
    return sign * std::exp(log_sum);
}

double gamma_ratio(std::initializer_list<double> num, std::initializer_list<double> den) {
    return GammaRatio{std::vector<double>(num), std::vector<double>(den)}.value();
}

double pochhammer(double a, int j) {
    if (j < 0)
        throw DomainError("pochhammer: negative index");
    if (j == 0)
        return 1.0;
    if (j <= 20) {
        double p = 1.0;
        for (int k = 0; k < j; ++k)
            p *= a + k;
        return p;
    }
    if (is_nonpositive_integer(a) && j > -a)
        return 0.0;
    if (is_nonpositive_integer(a + j)) {
        // every factor is negative: (a)_j = (-1)^j (1-a-j)_j
        double v = pochhammer(1.0 - a - j, j);
        return (j % 2 == 0) ? v : -v;
    }
    int s1 = 1, s2 = 1;
    double l1 = log_abs_gamma(a + j, &s1);
    double l2 = log_abs_gamma(a, &s2);
    return s1 * s2 * std::exp(l1 - l2);
}

double digamma(double x) {
    if (is_nonpositive_integer(x))
        throw DomainError("digamma has a pole at " + std::to_string(x));
    if (x < 0.0) {
        // reflection
        return digamma(1.0 - x) - kPi / std::tan(kPi * x);
    }
    double acc = 0.0;
    while (x < 10.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    // B_2k / (2k) for k = 1..7
    static const double c[] = {1.0 / 12.0,        -1.0 / 120.0,   1.0 / 252.0,   -1.0 / 240.0,
                               1.0 / 132.0,       -691.0 / 32760.0, 1.0 / 12.0};
    double poly = 0.0;
    for (int k = 6; k >= 0; --k)
        poly = poly * inv2 + c[k];
    return acc + std::log(x) - 0.5 * inv - inv2 * poly;
}

double zeta3() { return 1.2020569031595942853997381615114499907649862923405; }

double jacobi_poly(double alpha, double beta, int m, double x) {
    if (m < 0)
        throw DomainError("jacobi_poly: negative degree");
    double p0 = 1.0;
    if (m == 0)
        return p0;
    double p1 = (alpha + 1.0) + (alpha + beta + 2.0) * (x - 1.0) / 2.0;
    for (int k = 1; k < m; ++k) {
        const double s = 2.0 * k + alpha + beta;
        const double a1 = 2.0 * (k + 1) * (k + alpha + beta + 1.0) * s;
        const double a2 = (s + 1.0) * (alpha * alpha - beta * beta);
        const double a3 = s * (s + 1.0) * (s + 2.0);
        const double a4 = 2.0 * (k + alpha) * (k + beta) * (s + 2.0);
        double p2 = ((a2 + a3 * x) * p1 - a4 * p0) / a1;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

SeriesValue gauss_2f1(double a, double b, double c, Complex z, double tol) {
    return gauss_2f1(F21Params{a, b, c, z}, tol);
}

SeriesValue gauss_2f1(const F21Params& prm, double tol) {
    const double a = prm.a, b = prm.b, c = prm.c;
    const Complex z = prm.z;
    const double az = std::abs(z);
    if (!(az <= 1.0))
        throw DomainError("|z| > 1 in " + fmt_params(a, b, c, z));
    if (!(tol > 0.0))
        throw DomainError("tolerance must be positive");

    const bool terminating = is_nonpositive_integer(a) || is_nonpositive_integer(b);
    if (terminating || az <= 0.5)
        return finish(direct_series(a, b, c, z, tol));
    if (is_nonpositive_integer(c))
        throw DomainError("c is a non-positive integer in " + fmt_params(a, b, c, z));

    if (z == Complex(1.0, 0.0)) {
        if (!(c - a - b > 0.0))
            throw DomainError("2F1 diverges at z = 1 when c - a - b <= 0");
        SeriesValue out;
        out.value = GammaRatio{{c, c - a - b}, {c - a, c - b}}.value();
        out.tail_estimate = 8.0 * kEps * std::abs(out.value);
        return out;
    }

    const double d_direct = az;
    const double d_conn = std::abs(1.0 - z);
    const double d_pfaff = az / std::abs(z - 1.0);

    if (d_pfaff < d_conn && d_pfaff < d_direct) {
        // Pfaff: 2F1(a,b;c;z) = (1-z)^(-a) 2F1(a,c-b;c;z/(z-1))
        Complex pre = std::pow(1.0 - z, -a);
        Partial p = direct_series(a, c - b, c, z / (z - 1.0), tol);
        p.value *= pre;
        p.abs_sum *= std::abs(pre);
        p.tail *= std::abs(pre);
        return finish(p);
    }
    if (d_direct <= d_conn)
        return finish(direct_series(a, b, c, z, tol));

    Partial p = connection(a, b, c, z, tol);
    double err = p.tail + rounding(p);
    if (err > tol * std::abs(p.value) && az < 1.0) {
        // The connection formula can cancel badly for large parameters; the
        // defining series is then often the better conditioned of the two.
        try {
            Partial d = direct_series(a, b, c, z, tol);
            if (d.tail + rounding(d) < err)
                return finish(d);
        } catch (const NonConvergent&) {
        }
    }
    return finish(p);
}

}  // namespace mhk
