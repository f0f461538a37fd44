#include "extrapolation.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <tuple>

#include "mhk/series.hpp"

namespace mhk::detail {

namespace {

struct Basis {
    double exponent;
    bool with_log;
};

// Solves P(M_k) = L + Σ a_i M_k^{-e_i} (log M_k)^{[log]} on the last points.
double fit_limit(const std::vector<double>& marks, const std::vector<double>& partial,
                 const std::vector<Basis>& basis) {
    const std::size_t k = basis.size() + 1;
    const std::size_t first = partial.size() - k;
    const double ref = marks.back();
    Eigen::MatrixXd A(k, k);
    Eigen::VectorXd b(k);
    for (std::size_t r = 0; r < k; ++r) {
        const double M = marks[first + r];
        A(r, 0) = 1.0;
        for (std::size_t c = 0; c < basis.size(); ++c) {
            double v = std::pow(M / ref, -basis[c].exponent);
            if (basis[c].with_log)
                v *= std::log(M);
            A(r, c + 1) = v;
        }
        b(r) = partial[first + r];
    }
    return A.colPivHouseholderQr().solve(b)(0);
}

}  // namespace

LadderResult algebraic_series_limit(const std::vector<double>& terms, double alpha, int first) {
    std::vector<double> partial, marks;
    CompensatedSum acc;
    int mark = first;
    for (std::size_t m = 0; m < terms.size(); ++m) {
        acc.add(terms[m]);
        if (static_cast<int>(m + 1) == mark) {
            partial.push_back(acc.value());
            marks.push_back(mark);
            mark *= 2;
        }
    }
    LadderResult out;
    out.terms = marks.empty() ? static_cast<int>(terms.size()) : static_cast<int>(marks.back());
    const std::size_t levels = partial.size();
    if (levels < 2) {
        out.value = acc.value();
        out.error = std::fabs(acc.value());
        return out;
    }
    out.value = partial.back();
    out.error = std::fabs(partial.back() - partial[levels - 2]);
    // Fast tails need no model.
    if (out.error <= 4.0 * std::numeric_limits<double>::epsilon() * std::fabs(out.value) ||
        levels < 7)
        return out;
    // The tail of these Beta-type series carries powers M^{-alpha-k}, with
    // logarithmic companions from the second order on.
    const std::vector<Basis> plain{{alpha, false}, {alpha + 1, false}, {alpha + 2, false},
                                   {alpha + 3, false}};
    const std::vector<Basis> full{{alpha, false},     {alpha + 1, false}, {alpha + 2, false},
                                  {alpha + 2, true},  {alpha + 3, false}, {alpha + 3, true}};
    const double a = fit_limit(marks, partial, plain);
    const double b = fit_limit(marks, partial, full);
    if (std::isfinite(b) && std::fabs(a - b) < out.error) {
        out.value = b;
        out.error = std::fabs(a - b);
    }
    return out;
}

std::shared_ptr<const std::vector<double>> hypergeometric_square_coefficients(int p, int q,
                                                                             double h, int count) {
    static std::mutex mutex;
    static std::map<std::tuple<int, int, double, int>, std::shared_ptr<const std::vector<double>>>
        cache;
    const auto key = std::make_tuple(p, q, h, count);
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find(key);
        if (it != cache.end())
            return it->second;
    }
    std::vector<double> u(count);
    u[0] = 1.0;
    for (int j = 0; j + 1 < count; ++j)
        u[j + 1] = u[j] * (p + j) * (q + j) / ((h + j) * (j + 1.0));
    auto out = std::make_shared<std::vector<double>>(count);
    for (int m = 0; m < count; ++m) {
        CompensatedSum conv;
        for (int j = 0; j <= m; ++j)
            conv.add(u[j] * u[m - j]);
        (*out)[m] = conv.value();
    }
    std::lock_guard<std::mutex> lock(mutex);
    return cache.emplace(key, out).first->second;
}

}  // namespace mhk::detail
