#pragma once

#include <cmath>
#include <complex>
#include <random>

#include <boost/multiprecision/mpfr.hpp>

#include "mhk/ball.hpp"
#include "mhk/special.hpp"

namespace testing {

using mp = boost::multiprecision::mpfr_float_50;
using mhk::Complex;

inline double rel_err(Complex a, Complex b) {
    const double s = std::abs(b);
    return s == 0.0 ? std::abs(a) : std::abs(a - b) / s;
}

// Plain 2F1 power series in 50-digit arithmetic, |z| <= 0.9.
inline Complex f21_series_mp(double a, double b, double c, Complex z, int terms = 20000) {
    mp re = 1, im = 0, tre = 1, tim = 0;
    const mp zr = z.real(), zi = z.imag();
    for (int k = 0; k < terms; ++k) {
        const mp f = (mp(a) + k) * (mp(b) + k) / ((mp(c) + k) * (k + 1));
        const mp nre = (tre * zr - tim * zi) * f;
        const mp nim = (tre * zi + tim * zr) * f;
        tre = nre;
        tim = nim;
        re += tre;
        im += tim;
        if (abs(tre) + abs(tim) < mp(1e-45) * (abs(re) + abs(im)) && k > 10)
            break;
    }
    return {static_cast<double>(re), static_cast<double>(im)};
}

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double a, double b) {
    return std::uniform_real_distribution<double>(a, b)(g);
}

inline mhk::BallPoint ball_point(int n, double rmax, std::mt19937_64& g) {
    return mhk::random_ball_point(n, uniform(g, 0.0, rmax), g);
}

// (1/2π)(1-|x|²|y|²)/|1-x conj(y)|²
inline double disc_szego(Complex x, Complex y) {
    return (1.0 - std::norm(x) * std::norm(y)) / std::norm(1.0 - x * std::conj(y)) / (2.0 * mhk::kPi);
}

}  // namespace testing
