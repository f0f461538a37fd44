#pragma once

#include <memory>
#include <vector>

namespace mhk::detail {

struct LadderResult {
    double value = 0.0;
    double error = 0.0;
    int terms = 0;
};

// Limit of Σ terms[m] when the tail after M behaves like
// M^{-alpha} (d0 + d1/M + ...), possibly with log M factors from M^{-alpha-2}
// on. Partial sums at M = first, 2 first, ... are fitted to that model; the
// error is the gap to a fit without the log terms.
LadderResult algebraic_series_limit(const std::vector<double>& terms, double alpha,
                                    int first = 64);

// (u*u)_m = Σ_{j+k=m} u_j u_k with u_j = (p)_j (q)_j / ((h)_j j!), m < count.
// Cached; the table does not depend on s.
std::shared_ptr<const std::vector<double>> hypergeometric_square_coefficients(int p, int q,
                                                                             double h, int count);

}  // namespace mhk::detail
