#pragma once

#include <map>
#include <utility>
#include <vector>

#include "mhk/ball.hpp"
#include "mhk/special.hpp"

namespace mhk {

struct BigradedIndex {
    int p = 0;
    int q = 0;
};

// 2π^n / Γ(n), the surface measure of the unit sphere in C^n.
double sphere_measure(int n);

// dim H^{pq}; for n = 1 this is 1 when pq = 0 and 0 otherwise.
double harmonic_dimension(BigradedIndex index, int n);

// Zonal kernel H^{pq}(z), |z| <= 1, normalized so that H^{pq}(1) equals
// dim H^{pq} · Γ(n)/(2π^n).
Complex zonal_h(BigradedIndex index, int n, Complex z);

// r^{p+q} 2F1(p,q;p+q+n;r²) / 2F1(p,q;p+q+n;1)
double radial_s(BigradedIndex index, int n, double r);

using MultiIndex = std::vector<int>;

struct MonomialPair {
    MultiIndex nu;
    MultiIndex mu;
};

// ∫ ζ^ν conj(ζ)^μ dσ(ζ)
double sphere_monomial_integral(const MonomialPair& pair, int n);

struct PolyTerm {
    MultiIndex nu;
    MultiIndex mu;
    Complex coefficient;
};

// Polynomial in η and conj(η): (ν, μ) -> coefficient of η^ν conj(η)^μ.
using SpherePoly = std::map<std::pair<MultiIndex, MultiIndex>, Complex>;

Complex sphere_poly_integral(const std::vector<PolyTerm>& poly, int n);
Complex sphere_poly_integral(const SpherePoly& poly, int n);

SpherePoly poly_multiply(const SpherePoly& a, const SpherePoly& b);
Complex poly_evaluate(const SpherePoly& poly, const CVector& eta);

// H^{pq}(<zeta, η>) as a polynomial in η, or H^{pq}(<η, zeta>) when
// eta_first is set.
SpherePoly zonal_poly(BigradedIndex index, int n, const CVector& zeta, bool eta_first = false);

// Σ_{p+q <= cap} S^{pq}(|z|) H^{pq}(<z/|z|, η>)
Complex poisson_partial_sum(int n, const BallPoint& z, const SpherePoint& eta, int degree_cap);

// Both sides of
//   Σ_{p+q+j+k=m} ΓΓ(p+n+j, q+n+j / n, p+q+n+j, j+1) ΓΓ(p+n+k, q+n+k / n, p+q+n+k, k+1) dim H^{pq}
//     = (2n)_m² / (m! (n)_m),
// the t^m coefficients of Σ t^{p+q} ΓΓ(..)² 2F1(n+p,n+q;n+p+q;t)² dim H^{pq} = 2F1(2n,2n;n;t).
std::pair<double, double> bigraded_identity_sides(int n, int m);

}  // namespace mhk
