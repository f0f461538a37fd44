#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mhk/ball.hpp"
#include "mhk/harmonics.hpp"
#include "mhk/kernels.hpp"

namespace mhk {

struct OracleReport {
    std::string identity_name;
    Complex lhs{0.0, 0.0};
    Complex rhs{0.0, 0.0};
    double abs_error = 0.0;
    double rel_error = 0.0;
    std::vector<std::pair<std::string, double>> budget;
    std::optional<std::uint64_t> seed;

    // fills abs_error and rel_error from lhs and rhs
    void finish();
    bool passes(double rel_tol) const { return rel_error <= rel_tol; }
};

// Dense multi-index arrays above this many entries are refused.
constexpr std::size_t kBruteForceBudget = 5'000'000;

// ∫ (1-<z,ζ>)^{-α} (1-<ζ,z>)^{-β} (1-<w,ζ>)^{-γ} (1-<ζ,w>)^{-δ} dσ(ζ), with each
// factor expanded by the binomial series and truncated at total degree cap.
SeriesValue sphere_binomial_integral(int n, double alpha, double beta, double gamma, double delta,
                                     const BallPoint& z, const BallPoint& w, int degree_cap);

// Γ(n)²/(4π^{2n}) (1-|z|²)^n (1-|w|²)^n ∫ |1-<z,ζ>|^{-2n} |1-<w,ζ>|^{-2n} dσ(ζ)
SeriesValue szego_bruteforce(int n, const BallPoint& z, const BallPoint& w, int degree_cap);

// Truncation degree that brings the binomial tail below tol for radii <= r.
int bruteforce_degree(double r, double tol, double max_exponent = 2.5);

OracleReport theorem_pb_check(int n, double alpha, double beta, double gamma, double delta,
                              const BallPoint& z, const BallPoint& w, int degree_cap);

struct MonteCarloEstimate {
    Complex mean{0.0, 0.0};
    double stderr_ = 0.0;
    int samples = 0;
};

// Mean of integrand over uniform sphere points, scaled by the sphere measure.
MonteCarloEstimate montecarlo_sphere(int n, const std::function<Complex(const SpherePoint&)>& integrand,
                                     int samples, std::uint64_t seed);

// Integrates f = S^{pq}(|y|) ζ1^p conj(ζ2)^q against K(z, ·) over the ball (or
// the sphere for the point mass) and compares with f(z).
OracleReport reproducing_check(const KernelParams& params, BigradedIndex index, const BallPoint& z);

}  // namespace mhk
