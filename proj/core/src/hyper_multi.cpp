#include "mhk/hyper_multi.hpp"

#include "extrapolation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace mhk {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kQuietShells = 3;
constexpr int kMaxShells2 = 4000;

void check_argument(Complex x, const char* name) {
    if (!(std::abs(x) <= kMaxSeriesArgument))
        throw DomainError(std::string("argument ") + name + " has modulus " +
                          std::to_string(std::abs(x)) + " above " +
                          std::to_string(kMaxSeriesArgument));
}

// Tracks shell magnitudes and decides convergence.
class ShellMonitor {
public:
    explicit ShellMonitor(double tol) : tol_(std::max(tol, kEps)) {}

    // Returns true once kQuietShells consecutive shells were negligible.
    bool push(double shell_abs, Complex sum) {
        history_.push_back(shell_abs);
        const double scale = std::max(std::abs(sum), std::numeric_limits<double>::min());
        if (shell_abs <= tol_ * scale)
            ++quiet_;
        else
            quiet_ = 0;
        return quiet_ >= kQuietShells;
    }

    double tail() const {
        const std::size_t k = history_.size();
        if (k < 2)
            return history_.empty() ? 0.0 : history_.back();
        double rho = 0.0;
        for (std::size_t i = (k > 4 ? k - 3 : 1); i < k; ++i)
            if (history_[i - 1] > 0.0)
                rho = std::max(rho, history_[i] / history_[i - 1]);
        if (history_.back() == 0.0)
            return 0.0;
        if (rho >= 1.0)
            return history_.back() * 10.0;
        return history_.back() * rho / (1.0 - rho);
    }

private:
    double tol_;
    int quiet_ = 0;
    std::vector<double> history_;
};

// Two-variable series Σ T(i,j) summed by shells d = i + j. T(i,j) is built
// from T(i-1,j) by ratio_x or from T(0,j-1) by ratio_y.
template <class RatioX, class RatioY>
SeriesValue shell_sum_2(RatioX ratio_x, RatioY ratio_y, double tol, long term_bound_i,
                        long term_bound_j) {
    CompensatedComplexSum sum;
    sum.add(1.0);
    std::vector<Complex> prev{Complex(1.0, 0.0)}, cur;
    ShellMonitor monitor(tol);
    const bool finite = term_bound_i >= 0 && term_bound_j >= 0;
    const long last = finite ? term_bound_i + term_bound_j : kMaxShells2;
    for (long d = 1; d <= last; ++d) {
        cur.assign(d + 1, Complex(0.0, 0.0));
        double shell_abs = 0.0;
        for (long i = 0; i <= d; ++i) {
            const long j = d - i;
            Complex t;
            if (i > 0)
                t = prev[i - 1] * ratio_x(i - 1, j);
            else
                t = prev[0] * ratio_y(0, j - 1);
            cur[i] = t;
            sum.add(t);
            shell_abs += std::abs(t);
        }
        prev.swap(cur);
        if (!finite && monitor.push(shell_abs, sum.value())) {
            SeriesValue out;
            out.value = sum.value();
            out.truncation_order = static_cast<int>(d);
            out.tail_estimate = monitor.tail();
            return out;
        }
    }
    if (finite) {
        SeriesValue out;
        out.value = sum.value();
        out.truncation_order = static_cast<int>(last);
        return out;
    }
    throw NonConvergent("two-variable series did not converge within " +
                        std::to_string(kMaxShells2) + " shells");
}

long termination_bound(double a) {
    return is_nonpositive_integer(a) ? static_cast<long>(-a) : -1;
}

long min_bound(long u, long v) {
    if (u < 0)
        return v;
    if (v < 0)
        return u;
    return std::min(u, v);
}

Complex cpow(Complex base, double e) { return std::pow(base, e); }

FD1Transformed euler_unchecked(const FD1Params& p) {
    FD1Transformed out;
    out.prefactor = cpow(1.0 - p.x1, -p.b1) * cpow(1.0 - p.x2, -p.b2);
    out.params = p;
    out.params.a = p.c - p.a - p.a_prime;
    out.params.x1 = p.x1 / (p.x1 - 1.0);
    out.params.x2 = p.x2 / (p.x2 - 1.0);
    out.params.y1 = (p.y1 - p.x1) / (1.0 - p.x1);
    out.params.y2 = (p.y2 - p.x2) / (1.0 - p.x2);
    return out;
}

// Offset of (i1,i2,j1) inside shell d; j2 = d - i1 - i2 - j1.
inline std::size_t tet(long r) { return static_cast<std::size_t>((r + 1) * (r + 2) * (r + 3) / 6); }
inline std::size_t shell_size(long d) { return tet(d); }
inline std::size_t offset(long d, long i1, long i2, long j1) {
    const long r = d - i1;
    std::size_t base = (i1 == 0) ? 0 : tet(d) - tet(d - i1);
    return base + static_cast<std::size_t>(i2 * (r + 1) - i2 * (i2 - 1) / 2 + j1);
}

}  // namespace

SeriesValue appell_f1(double a, double b1, double b2, double c, Complex x, Complex y, double tol) {
    check_argument(x, "x");
    check_argument(y, "y");
    if (is_nonpositive_integer(c))
        throw DomainError("appell_f1: c is a non-positive integer");
    auto rx = [&](long i, long j) {
        return (a + i + j) * (b1 + i) / ((c + i + j) * (i + 1.0)) * x;
    };
    auto ry = [&](long i, long j) {
        return (a + i + j) * (b2 + j) / ((c + i + j) * (j + 1.0)) * y;
    };
    long bi = termination_bound(b1), bj = termination_bound(b2);
    long ba = termination_bound(a);
    if (ba >= 0) {
        bi = min_bound(bi, ba);
        bj = min_bound(bj, ba);
    }
    if (x == 0.0)
        bi = 0;
    if (y == 0.0)
        bj = 0;
    return shell_sum_2(rx, ry, tol, bi, bj);
}

SeriesValue appell_f3(double a, double a_prime, double b, double b_prime, double c, Complex x,
                      Complex y, double tol) {
    check_argument(x, "x");
    check_argument(y, "y");
    if (is_nonpositive_integer(c))
        throw DomainError("appell_f3: c is a non-positive integer");
    auto rx = [&](long i, long j) { return (a + i) * (b + i) / ((c + i + j) * (i + 1.0)) * x; };
    auto ry = [&](long i, long j) {
        return (a_prime + j) * (b_prime + j) / ((c + i + j) * (j + 1.0)) * y;
    };
    long bi = min_bound(termination_bound(a), termination_bound(b));
    long bj = min_bound(termination_bound(a_prime), termination_bound(b_prime));
    if (x == 0.0)
        bi = 0;
    if (y == 0.0)
        bj = 0;
    return shell_sum_2(rx, ry, tol, bi, bj);
}

SeriesValue fd1(const FD1Params& p, double tol, int max_degree) {
    check_argument(p.x1, "x1");
    check_argument(p.x2, "x2");
    check_argument(p.y1, "y1");
    check_argument(p.y2, "y2");
    if (is_nonpositive_integer(p.c))
        throw DomainError("fd1: c is a non-positive integer");

    // Index caps: a zero argument kills its index, a non-positive integer
    // parameter bounds the indices it carries.
    const long unbounded = std::numeric_limits<long>::max() / 4;
    long cap_i1 = unbounded, cap_i2 = unbounded, cap_j1 = unbounded, cap_j2 = unbounded;
    if (p.x1 == 0.0) cap_i1 = 0;
    if (p.x2 == 0.0) cap_i2 = 0;
    if (p.y1 == 0.0) cap_j1 = 0;
    if (p.y2 == 0.0) cap_j2 = 0;
    const long ta = termination_bound(p.a), tap = termination_bound(p.a_prime);
    const long tb1 = termination_bound(p.b1), tb2 = termination_bound(p.b2);
    auto clamp = [](long& cap, long bound) {
        if (bound >= 0)
            cap = std::min(cap, bound);
    };
    clamp(cap_i1, ta); clamp(cap_i2, ta); clamp(cap_j1, tap); clamp(cap_j2, tap);
    clamp(cap_i1, tb1); clamp(cap_j1, tb1); clamp(cap_i2, tb2); clamp(cap_j2, tb2);

    // The total degree is finite when both "rows" or both "columns" terminate.
    long finite_degree = -1;
    if (ta >= 0 && tap >= 0)
        finite_degree = ta + tap;
    if (tb1 >= 0 && tb2 >= 0)
        finite_degree = (finite_degree < 0) ? tb1 + tb2 : std::min(finite_degree, tb1 + tb2);
    if (std::max({cap_i1, cap_i2, cap_j1, cap_j2}) < unbounded) {
        long sum_caps = cap_i1 + cap_i2 + cap_j1 + cap_j2;
        finite_degree = (finite_degree < 0) ? sum_caps : std::min(finite_degree, sum_caps);
    }
    const long last = (finite_degree >= 0) ? finite_degree : max_degree;

    CompensatedComplexSum sum;
    sum.add(1.0);
    std::vector<Complex> prev(1, Complex(1.0, 0.0)), cur;
    ShellMonitor monitor(tol);
    for (long d = 1; d <= last; ++d) {
        cur.assign(shell_size(d), Complex(0.0, 0.0));
        const double cd = p.c + d - 1.0;
        double shell_abs = 0.0;
        for (long i1 = 0; i1 <= std::min(d, cap_i1); ++i1) {
            for (long i2 = 0; i2 <= std::min(d - i1, cap_i2); ++i2) {
                const long rest = d - i1 - i2;
                const long j1_lo = std::max(0L, rest - cap_j2);
                for (long j1 = j1_lo; j1 <= std::min(rest, cap_j1); ++j1) {
                    const long j2 = rest - j1;
                    Complex t;
                    if (i1 > 0) {
                        t = prev[offset(d - 1, i1 - 1, i2, j1)] *
                            ((p.a + i1 + i2 - 1.0) * (p.b1 + i1 + j1 - 1.0) / (cd * i1)) * p.x1;
                    } else if (i2 > 0) {
                        t = prev[offset(d - 1, 0, i2 - 1, j1)] *
                            ((p.a + i2 - 1.0) * (p.b2 + i2 + j2 - 1.0) / (cd * i2)) * p.x2;
                    } else if (j1 > 0) {
                        t = prev[offset(d - 1, 0, 0, j1 - 1)] *
                            ((p.a_prime + j1 + j2 - 1.0) * (p.b1 + j1 - 1.0) / (cd * j1)) * p.y1;
                    } else {
                        t = prev[offset(d - 1, 0, 0, 0)] *
                            ((p.a_prime + j2 - 1.0) * (p.b2 + j2 - 1.0) / (cd * j2)) * p.y2;
                    }
                    cur[offset(d, i1, i2, j1)] = t;
                    sum.add(t);
                    shell_abs += std::abs(t);
                }
            }
        }
        prev.swap(cur);
        if (finite_degree < 0 && monitor.push(shell_abs, sum.value())) {
            SeriesValue out;
            out.value = sum.value();
            out.truncation_order = static_cast<int>(d);
            out.tail_estimate = monitor.tail();
            return out;
        }
    }
    if (finite_degree >= 0) {
        SeriesValue out;
        out.value = sum.value();
        out.truncation_order = static_cast<int>(last);
        return out;
    }
    throw NonConvergent("fd1 did not converge within total degree " + std::to_string(max_degree));
}

FD1Transformed fd1_euler_transform(const FD1Params& params) {
    FD1Transformed out = euler_unchecked(params);
    const FD1Params& t = out.params;
    for (Complex v : {t.x1, t.x2, t.y1, t.y2})
        if (!(std::abs(v) < 1.0))
            throw DomainError("Euler-transformed argument leaves the unit disc");
    return out;
}

FD1Params fd1_swap(const FD1Params& p) {
    FD1Params q = p;
    q.a = p.b1;
    q.a_prime = p.b2;
    q.b1 = p.a;
    q.b2 = p.a_prime;
    q.x2 = p.y1;
    q.y1 = p.x2;
    return q;
}

FD1Transformed fd1_szego_chain(const FD1Params& params) {
    // Intermediate arguments may leave the disc; the composed identity is
    // one of analytic functions and only the end point is summed.
    FD1Transformed first = euler_unchecked(params);
    FD1Transformed second = euler_unchecked(fd1_swap(first.params));
    FD1Transformed out;
    out.prefactor = first.prefactor * second.prefactor;
    out.params = fd1_swap(second.params);
    return out;
}

SeriesValue cpq_unit_double_series(const DoubleSeriesParams& prm, double tol) {
    const int p = prm.p, q = prm.q, n = prm.n;
    const double s = prm.s;
    if (p < 0 || q < 0 || n < 1)
        throw DomainError("cpq_unit_double_series: invalid indices");
    if (!(s > -1.0))
        throw DomainError("cpq_unit_double_series: s must exceed -1");
    const double h = n + p + q;
    const double lead = std::pow(gamma_ratio({n + p + 0.0, n + q + 0.0}, {n + 0.0, h}), 2) *
                        gamma_ratio({h, s + 1.0}, {h + s + 1.0});
    if (p == 0 || q == 0) {
        SeriesValue out;
        out.value = lead;
        out.truncation_order = 1;
        out.tail_estimate = 4.0 * kEps * lead;
        return out;
    }

    const int m_max = 8192;
    std::vector<double> terms = *detail::hypergeometric_square_coefficients(p, q, h, m_max);
    double r = 1.0;
    for (int m = 0; m < m_max; ++m) {
        terms[m] *= r;
        r *= (h + m) / (h + s + 1.0 + m);
    }
    const detail::LadderResult lim = detail::algebraic_series_limit(terms, n + s + 1.0);
    const double best = lim.value, best_err = lim.error;
    SeriesValue out;
    out.value = lead * best;
    out.truncation_order = lim.terms;
    out.tail_estimate = lead * best_err;
    if (best_err > tol * std::fabs(best))
        throw NonConvergent("unit double series for c_" + std::to_string(p) + std::to_string(q) +
                            " stalled at relative error " + std::to_string(best_err / best));
    return out;
}

}  // namespace mhk
