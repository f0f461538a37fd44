#include "mhk/oracle.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace mhk {

namespace {

// Multi-indices with |μ| <= cap laid out in the box (cap+1)^n.
struct IndexBox {
    int n = 0;
    int cap = 0;
    std::vector<MultiIndex> list;
    std::vector<std::size_t> stride;

    IndexBox(int n_, int cap_) : n(n_), cap(cap_) {
        double size = std::pow(cap + 1.0, n);
        if (size > static_cast<double>(kBruteForceBudget))
            throw TruncationBudgetExceeded("brute-force oracle: (" + std::to_string(cap) + "+1)^" +
                                           std::to_string(n) + " coefficients exceed the budget");
        stride.assign(n, 1);
        for (int i = n - 2; i >= 0; --i)
            stride[i] = stride[i + 1] * (cap + 1);
        MultiIndex mu(n, 0);
        enumerate(mu, 0, cap);
    }

    std::size_t offset(const MultiIndex& mu) const {
        std::size_t k = 0;
        for (int i = 0; i < n; ++i)
            k += stride[i] * mu[i];
        return k;
    }
    std::size_t box_size() const { return stride[0] * (cap + 1); }

private:
    void enumerate(MultiIndex& mu, int i, int left) {
        if (i == n) {
            list.push_back(mu);
            return;
        }
        for (int k = 0; k <= left; ++k) {
            mu[i] = k;
            enumerate(mu, i + 1, left - k);
        }
        mu[i] = 0;
    }
};

int total(const MultiIndex& mu) {
    int t = 0;
    for (int k : mu)
        t += k;
    return t;
}

// x^μ |μ|!/μ! for every μ in the box; the multinomial stays finite where
// (a)_k and 1/μ! separately would not
std::vector<Complex> scaled_monomials(const IndexBox& box, const CVector& x) {
    std::vector<Complex> out(box.box_size(), Complex(0.0, 0.0));
    for (const MultiIndex& mu : box.list) {
        double lg = std::lgamma(total(mu) + 1.0);
        Complex v{1.0, 0.0};
        for (int i = 0; i < box.n; ++i) {
            v *= std::pow(x[i], mu[i]);
            lg -= std::lgamma(mu[i] + 1.0);
        }
        out[box.offset(mu)] = v * std::exp(lg);
    }
    return out;
}

// Coefficients of (1 - Σ x_i u_i)^{-a} (1 - Σ y_i u_i)^{-b} in the monomials u^μ.
std::vector<Complex> binomial_product(const IndexBox& box, double a, const CVector& x, double b,
                                      const CVector& y) {
    std::vector<double> pa(box.cap + 1), pb(box.cap + 1);
    pa[0] = pb[0] = 1.0;
    for (int k = 1; k <= box.cap; ++k) {
        // (a)_k / k!
        pa[k] = pa[k - 1] * (a + k - 1) / k;
        pb[k] = pb[k - 1] * (b + k - 1) / k;
    }
    const std::vector<Complex> X = scaled_monomials(box, x);
    const std::vector<Complex> Y = scaled_monomials(box, y);
    std::vector<Complex> out(box.box_size(), Complex(0.0, 0.0));
    MultiIndex mu1(box.n), mu2(box.n);
    for (const MultiIndex& mu : box.list) {
        const int t = total(mu);
        CompensatedComplexSum acc;
        std::fill(mu1.begin(), mu1.end(), 0);
        // odometer over 0 <= mu1 <= mu
        while (true) {
            int t1 = 0;
            for (int i = 0; i < box.n; ++i) {
                mu2[i] = mu[i] - mu1[i];
                t1 += mu1[i];
            }
            acc.add(pa[t1] * pb[t - t1] * X[box.offset(mu1)] * Y[box.offset(mu2)]);
            int i = box.n - 1;
            while (i >= 0 && mu1[i] == mu[i]) {
                mu1[i] = 0;
                --i;
            }
            if (i < 0)
                break;
            ++mu1[i];
        }
        out[box.offset(mu)] = acc.value();
    }
    return out;
}

double tail_from_shells(const std::vector<double>& shells) {
    const std::size_t k = shells.size();
    if (k < 3)
        return k ? shells.back() : 0.0;
    double rho = 0.0;
    for (std::size_t i = k - 3; i < k; ++i)
        if (shells[i - 1] > 0.0)
            rho = std::max(rho, shells[i] / shells[i - 1]);
    if (shells.back() == 0.0)
        return 0.0;
    if (rho >= 1.0)
        return std::numeric_limits<double>::infinity();
    return shells.back() * rho / (1.0 - rho);
}

CVector conj_vec(const CVector& v) {
    CVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = std::conj(v[i]);
    return out;
}

}  // namespace

void OracleReport::finish() {
    abs_error = std::abs(lhs - rhs);
    const double scale = std::max(std::abs(rhs), std::numeric_limits<double>::min());
    rel_error = abs_error / scale;
}

SeriesValue sphere_binomial_integral(int n, double alpha, double beta, double gamma, double delta,
                                     const BallPoint& z, const BallPoint& w, int degree_cap) {
    if (z.dim() != n || w.dim() != n)
        throw DimensionMismatch("sphere_binomial_integral: points must lie in C^" +
                                std::to_string(n));
    if (degree_cap < 0)
        throw DomainError("sphere_binomial_integral: negative degree cap");
    const IndexBox box(n, degree_cap);
    // (1-<z,ζ>)^{-α}(1-<w,ζ>)^{-γ} carries conj(ζ)^μ with coefficient A(μ);
    // (1-<ζ,z>)^{-β}(1-<ζ,w>)^{-δ} carries ζ^μ with coefficient B(μ).
    const std::vector<Complex> A = binomial_product(box, alpha, z.coords(), gamma, w.coords());
    const std::vector<Complex> B =
        binomial_product(box, beta, conj_vec(z.coords()), delta, conj_vec(w.coords()));
    std::vector<Complex> shell(degree_cap + 1, Complex(0.0, 0.0));
    for (const MultiIndex& mu : box.list) {
        const std::size_t k = box.offset(mu);
        shell[total(mu)] += A[k] * B[k] * sphere_monomial_integral({mu, mu}, n);
    }
    CompensatedComplexSum sum;
    std::vector<double> mags;
    for (const Complex& s : shell) {
        sum.add(s);
        mags.push_back(std::abs(s));
    }
    SeriesValue out;
    out.value = sum.value();
    out.truncation_order = degree_cap;
    out.tail_estimate = tail_from_shells(mags);
    return out;
}

SeriesValue szego_bruteforce(int n, const BallPoint& z, const BallPoint& w, int degree_cap) {
    const double a = n;
    SeriesValue v = sphere_binomial_integral(n, a, a, a, a, z, w, degree_cap);
    const double pref = std::pow(std::tgamma(a) / (2.0 * std::pow(kPi, n)), 2) *
                        std::pow(1.0 - z.norm2(), n) * std::pow(1.0 - w.norm2(), n);
    v.value *= pref;
    v.tail_estimate *= pref;
    return v;
}

int bruteforce_degree(double r, double tol, double max_exponent) {
    if (!(r >= 0.0 && r < 1.0))
        throw DomainError("bruteforce_degree: r must lie in [0, 1)");
    if (r == 0.0)
        return 0;
    const double lr = 2.0 * std::log(r);
    for (int k = 1; k < 10000; ++k)
        if (2.0 * max_exponent * std::log(k + 1.0) + k * lr < std::log(tol))
            return k;
    throw TruncationBudgetExceeded("bruteforce_degree: radius too close to 1");
}

OracleReport theorem_pb_check(int n, double alpha, double beta, double gamma, double delta,
                              const BallPoint& z, const BallPoint& w, int degree_cap) {
    OracleReport rep;
    rep.identity_name = "sphere integral of four binomial factors";
    const SeriesValue lhs = sphere_binomial_integral(n, alpha, beta, gamma, delta, z, w, degree_cap);
    FD1Params prm;
    prm.a = beta;
    prm.a_prime = delta;
    prm.b1 = alpha;
    prm.b2 = gamma;
    prm.c = n;
    // With <z,w> = Σ z_j conj(w_j) the mixed arguments enter as (<w,z>, <z,w>);
    // the other order gives the complex conjugate.
    prm.x1 = z.norm2();
    prm.x2 = inner(w, z);
    prm.y1 = inner(z, w);
    prm.y2 = w.norm2();
    const SeriesValue f = fd1(prm);
    rep.lhs = lhs.value;
    rep.rhs = sphere_measure(n) * f.value;
    rep.budget = {{"degree_cap", static_cast<double>(degree_cap)},
                  {"lhs_tail", lhs.tail_estimate},
                  {"fd1_order", static_cast<double>(f.truncation_order)}};
    rep.finish();
    return rep;
}

MonteCarloEstimate montecarlo_sphere(int n,
                                     const std::function<Complex(const SpherePoint&)>& integrand,
                                     int samples, std::uint64_t seed) {
    if (n < 1)
        throw DomainError("montecarlo_sphere: n must be at least 1");
    if (samples < 2)
        throw DomainError("montecarlo_sphere: need at least two samples");
    std::mt19937_64 rng(seed);
    CompensatedComplexSum sum;
    CompensatedSum sum_sq;
    for (int i = 0; i < samples; ++i) {
        const Complex v = integrand(random_sphere_point(n, rng));
        sum.add(v);
        sum_sq.add(std::norm(v));
    }
    const double measure = sphere_measure(n);
    const Complex mean = sum.value() / static_cast<double>(samples);
    const double var =
        std::max(0.0, (sum_sq.value() - samples * std::norm(mean)) / (samples - 1.0));
    MonteCarloEstimate out;
    out.mean = measure * mean;
    out.stderr_ = measure * std::sqrt(var / samples);
    out.samples = samples;
    return out;
}

OracleReport reproducing_check(const KernelParams& params, BigradedIndex index, const BallPoint& z) {
    params.validate();
    const int n = params.n;
    if (n < 2)
        throw DomainError("reproducing_check: needs n >= 2");
    if (z.dim() != n)
        throw DimensionMismatch("reproducing_check: point must lie in C^" + std::to_string(n));
    const int p = index.p, q = index.q;
    if (p < 0 || q < 0 || p > 3 || q > 3)
        throw DomainError("reproducing_check: indices must lie in [0, 3]");

    const double r = std::sqrt(z.norm2());
    CVector dir(n, Complex(0.0, 0.0));
    if (r > 0.0)
        for (int i = 0; i < n; ++i)
            dir[i] = z[i] / r;
    else
        dir[0] = 1.0;

    // f restricted to the sphere: η1^p conj(η2)^q
    SpherePoly g;
    MultiIndex nu(n, 0), mu(n, 0);
    nu[0] = p;
    mu[1] = q;
    g[{nu, mu}] = 1.0;

    auto radial = [&](BigradedIndex a, BigradedIndex b) {
        if (params.weight.is_hardy())
            return 1.0;
        const double s = params.weight.s;
        boost::math::quadrature::tanh_sinh<double> integrator;
        auto f = [&](double t) {
            if (t <= 0.0)
                return 0.0;
            const double rt = std::sqrt(std::min(t, 1.0));
            return 0.5 * std::pow(t, n - 1) * radial_s(a, n, rt) * radial_s(b, n, rt) *
                   std::pow(1.0 - t, s);
        };
        return integrator.integrate(f, 0.0, 1.0, 1e-13);
    };

    CompensatedComplexSum lhs;
    const int top = p + q + 2;
    for (int d = 0; d <= top; ++d)
        for (int a = 0; a <= d; ++a) {
            const BigradedIndex other{a, d - a};
            const Complex sphere = sphere_poly_integral(poly_multiply(g, zonal_poly(other, n, dir)), n);
            if (std::abs(sphere) < 1e-15)
                continue;
            lhs.add(radial_s(other, n, r) * radial(index, other) / coeff_cpq(params, a, d - a) *
                    sphere);
        }

    OracleReport rep;
    rep.identity_name = "reproducing property for S^{" + std::to_string(p) + std::to_string(q) +
                        "} z1^p conj(z2)^q";
    rep.lhs = lhs.value();
    rep.rhs = radial_s(index, n, r) * std::pow(dir[0], p) * std::pow(std::conj(dir[1]), q);
    rep.budget = {{"sphere_degree", static_cast<double>(top)},
                  {"weight_s", params.weight.is_hardy() ? -1.0 : params.weight.s}};
    rep.finish();
    if (std::abs(rep.rhs) == 0.0)
        rep.rel_error = rep.abs_error;
    return rep;
}

}  // namespace mhk
