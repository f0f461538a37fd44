#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <unordered_map>

#include "mhk/ball.hpp"
#include "mhk/harmonics.hpp"
#include "mhk/hyper_multi.hpp"
#include "mhk/special.hpp"

namespace mhk {

// Radial part of the measure dμ(t) ⊗ dσ: ½(1-t)^s dt, or the unit mass at t = 1.
struct WeightSpec {
    enum class Kind { PowerWeight, PointMassAtOne };
    Kind kind = Kind::PointMassAtOne;
    double s = 0.0;

    static WeightSpec power(double s);
    static WeightSpec hardy() { return {}; }
    bool is_hardy() const { return kind == Kind::PointMassAtOne; }
};

struct KernelParams {
    int n = 2;
    WeightSpec weight;
    double tol = 1e-12;
    int degree_cap = 320;

    void validate() const;
};

// Lazily filled table of c_pq and A_pqjm for one (n, weight, tol). Entries
// are computed outside the lock; concurrent first access may compute the same
// value twice, which is harmless because the computation is deterministic.
class CoeffCache {
public:
    CoeffCache(int n, WeightSpec weight, double tol);

    double cpq(int p, int q);
    double apqjm(int p, int q, int j, int m);

    int n() const { return n_; }
    const WeightSpec& weight() const { return weight_; }

private:
    double compute_cpq(int p, int q) const;

    int n_;
    WeightSpec weight_;
    double tol_;
    std::mutex mutex_;
    std::unordered_map<std::uint64_t, double> cpq_;
    std::unordered_map<std::uint64_t, double> apqjm_;
};

// Shared cache for the given parameters.
CoeffCache& coeff_cache(const KernelParams& params);

// c_pq(μ) = ΓΓ(p+n, q+n / n, p+q+n)² ∫ t^{p+q+n-1} 2F1(p,q;p+q+n;t)² dμ(t)
double coeff_cpq(const KernelParams& params, int p, int q);

struct CpqCrossCheck {
    double quadrature = 0.0;
    double double_series = 0.0;
    bool series_converged = false;
    double rel_difference = 0.0;
};

// coeff_cpq together with the unit-argument double series value.
CpqCrossCheck coeff_cpq_checked(const KernelParams& params, int p, int q);

double coeff_apqjm(const KernelParams& params, int p, int q, int j, int m);

// Closed form of A_pqjm for the point mass:
// (n)_{j+p}(n)_{j+q}(n)_{m+p}(n)_{m+q}/(n)_{m+j+p+q}
double apqjm_hardy_closed(int n, int p, int q, int j, int m);

double poisson_szego(int n, const BallPoint& z, const SpherePoint& zeta);

SeriesValue szego_fd(int n, const BallPoint& z, const BallPoint& w, double tol = 1e-13);
SeriesValue szego_2f1(int n, const BallPoint& z, const BallPoint& w, double tol = 1e-14);
double szego_diagonal(int n, const BallPoint& z);
double szego_orthogonal(int n, double r1, double r2);

// Quadruple series over (p,q,j,m) by total degree.
SeriesValue bergman_kernel(const KernelParams& params, const BallPoint& z, const BallPoint& w);

// Σ S^{pq}(|z|) S^{pq}(|w|) H^{pq}(<z/|z|, w/|w|>) / c_pq by degree p+q.
SeriesValue bergman_kernel_bigraded(const KernelParams& params, const BallPoint& z,
                                    const BallPoint& w);

Complex hol_kernel(int n, double s, const BallPoint& z, const BallPoint& w);
double harm_szego(int n, const BallPoint& z, const BallPoint& w);

// F_s with weights (p+(n-1)/2)^{s+1} (q+(n-1)/2)^{s+1}; s = -1 gives the
// plain bigraded Szegő expansion.
SeriesValue f_s_kernel(int n, int s, const BallPoint& z, const BallPoint& w, int degree_cap,
                       double tol = 1e-13);

// f_pq(s) = c_00(s)/c_pq(s), continued to s > -n-1 through
//   c_pq/c_00 = Γ(n)^{-1} ∫ G_pq^{(n)}(t) (1-t)^{s+n} dt.
double wallach_f(const KernelParams& params, int p, int q, double s, double tol = 1e-6);

// Γ(2n+s+1)Γ(n+s+1)²Γ(s+1) / (Γ(n)²Γ(2n+2s+2)) (pq)^{-s-1}
double cpq_asymptotic_leading(int n, double s, double p, double q);

// K_s(z,z)^{1/s} (1-|z|²)
double semiclassical_ratio(int n, double s, const BallPoint& z, double tol = 1e-12);

}  // namespace mhk
