#pragma once

#include <initializer_list>
#include <vector>

#include "mhk/error.hpp"
#include "mhk/series.hpp"

namespace mhk {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

bool is_nonpositive_integer(double x);

// log|Γ(x)| and the sign of Γ(x). Throws DomainError at poles.
double log_abs_gamma(double x, int* sign);

// 1/Γ(x), zero at the poles.
double rgamma(double x);

// Π Γ(num_i) / Π Γ(den_j) evaluated in log space.
//
// Poles are counted on both sides. More numerator poles than denominator
// poles is a DomainError, fewer gives 0. When the counts match each pole is
// treated as the limit Γ(-k + ε) as ε -> 0, so a matched pair contributes the
// residue ratio (-1)^(m-k) k!/m! for Γ(-m)/Γ(-k).
struct GammaRatio {
    std::vector<double> numerator_args;
    std::vector<double> denominator_args;

    double value() const;
};

double gamma_ratio(std::initializer_list<double> num, std::initializer_list<double> den);

// Raising factorial (a)_j.
double pochhammer(double a, int j);

double digamma(double x);
double zeta3();

// P_m^(alpha,beta)(x) by the three-term recurrence.
double jacobi_poly(double alpha, double beta, int m, double x);

struct F21Params {
    double a = 0.0;
    double b = 0.0;
    double c = 1.0;
    Complex z{0.0, 0.0};
};

// Gauss hypergeometric function for real parameters and |z| <= 1.
SeriesValue gauss_2f1(const F21Params& params, double tol = 1e-14);
SeriesValue gauss_2f1(double a, double b, double c, Complex z, double tol = 1e-14);

// 2F1(n+1, n+m+1; n+m+l+2; z) through the closed differentiation formula
//   (n+m+l+1)! (-1)^(m+1) / (l! n! (m+n)! (m+l)!)
//     * d^(n+m)/dz^(n+m) [ (1-z)^(m+l) d^l/dz^l ( log(1-z) / z ) ],
// expanded symbolically and evaluated in multiprecision.
double f21_log_form(int n, int m, int l, double z);

}  // namespace mhk
