#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "mhk/error.hpp"

namespace mhk {

// Gauss–Jacobi rule on [0,1] for the weight (1-t)^s.
struct QuadratureRule {
    int size = 0;
    double s = 0.0;
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Rules are built once per (size, s) and shared; safe to call concurrently.
std::shared_ptr<const QuadratureRule> gauss_jacobi_rule(int size, double s);

struct QuadratureResult {
    double value = 0.0;
    int nodes = 0;
    double change = 0.0;  // |I_N - I_{N/2}|
};

// ∫_0^1 f(t) (1-t)^s dt, doubling the node count from n_start until the
// relative change drops below tol. Throws QuadratureFailure past n_max.
QuadratureResult integrate_jacobi(const std::function<double(double)>& f, double s, double tol,
                                  int n_start = 16, int n_max = 4096);

}  // namespace mhk
