#pragma once

#include "mhk/series.hpp"
#include "mhk/special.hpp"

namespace mhk {

// Largest argument modulus accepted by the multivariable series.
constexpr double kMaxSeriesArgument = 0.97;

SeriesValue appell_f1(double a, double b1, double b2, double c, Complex x, Complex y,
                      double tol = 1e-14);

SeriesValue appell_f3(double a, double a_prime, double b, double b_prime, double c, Complex x,
                      Complex y, double tol = 1e-14);

// Σ (a)_{i1+i2} (a')_{j1+j2} (b1)_{i1+j1} (b2)_{i2+j2} / (c)_{i1+i2+j1+j2}
//     x1^i1 x2^i2 y1^j1 y2^j2 / (i1! i2! j1! j2!)
struct FD1Params {
    double a = 0.0;
    double a_prime = 0.0;
    double b1 = 0.0;
    double b2 = 0.0;
    double c = 1.0;
    Complex x1{0.0, 0.0};
    Complex x2{0.0, 0.0};
    Complex y1{0.0, 0.0};
    Complex y2{0.0, 0.0};
};

SeriesValue fd1(const FD1Params& params, double tol = 1e-13, int max_degree = 400);

struct FD1Transformed {
    FD1Params params;
    Complex prefactor{1.0, 0.0};
};

// prefactor * fd1(params) equals fd1 of the input:
//   (1-x1)^(-b1) (1-x2)^(-b2) FD1(c-a-a', a', b1, b2; c)
//     (x1/(x1-1), x2/(x2-1), (y1-x1)/(1-x1), (y2-x2)/(1-x2))
FD1Transformed fd1_euler_transform(const FD1Params& params);

// FD1(a,a',b1,b2;c)(x1,x2,y1,y2) = FD1(b1,b2,a,a';c)(x1,y1,x2,y2)
FD1Params fd1_swap(const FD1Params& params);

// Euler, swap, Euler, swap. Maps (n,n,n,n;n) at (|z|², <z,w>, <w,z>, |w|²)
// to the terminating (-n,n,-n,n;n) form used by the Szegő kernel.
FD1Transformed fd1_szego_chain(const FD1Params& params);

struct DoubleSeriesParams {
    int p = 0;
    int q = 0;
    int n = 1;
    double s = 0.0;
};

// 2 c_pq(s) from the unit-argument double series
//   ΓΓ(n+p,n+q / n,n+p+q)² Σ_{j,k} (p)_j(q)_j(p)_k(q)_k (n+p+q)_{j+k}
//     / ((n+p+q)_j (n+p+q)_k j! k! (n+p+q+s+1)_{j+k}) · ΓΓ(n+p+q, s+1 / n+p+q+s+1).
// Partial sums on a doubling ladder are extrapolated using the algebraic
// tail exponent n+s+1.
SeriesValue cpq_unit_double_series(const DoubleSeriesParams& params, double tol = 1e-10);

}  // namespace mhk
