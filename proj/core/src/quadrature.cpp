#include "mhk/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <utility>

namespace mhk {

namespace {

// Recurrence data for the orthonormal Jacobi polynomials on [-1,1],
// weight (1-x)^alpha (1+x)^beta.
struct JacobiMatrix {
    std::vector<double> diag;
    std::vector<double> offdiag;  // offdiag[j] couples j and j+1
    double mu0 = 0.0;
};

JacobiMatrix jacobi_matrix(int size, double alpha, double beta) {
    JacobiMatrix J;
    J.diag.resize(size);
    J.offdiag.resize(size);
    const double ab = alpha + beta;
    for (int j = 0; j < size; ++j) {
        if (j == 0) {
            J.diag[j] = (beta - alpha) / (ab + 2.0);
        } else {
            const double s = 2.0 * j + ab;
            J.diag[j] = (beta * beta - alpha * alpha) / (s * (s + 2.0));
        }
        const double k = j + 1.0;
        const double s = 2.0 * k + ab;
        double num = 4.0 * k * (k + alpha) * (k + beta) * (k + ab);
        double den = s * s * (s + 1.0) * (s - 1.0);
        J.offdiag[j] = std::sqrt(num / den);
    }
    J.mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) +
                     std::lgamma(beta + 1.0) - std::lgamma(ab + 2.0));
    return J;
}

// Orthonormal p_0..p_{N-1} at x; returns sum p_j^2 and p_N / p_N' for Newton.
struct Evaluation {
    double sum_sq = 0.0;
    double newton_step = 0.0;
};

Evaluation evaluate(const JacobiMatrix& J, int size, double x) {
    double p_prev = 0.0, p = 1.0 / std::sqrt(J.mu0);
    double d_prev = 0.0, d = 0.0;
    double sum_sq = 0.0;
    for (int j = 0; j < size; ++j) {
        sum_sq += p * p;
        const double b_prev = (j == 0) ? 0.0 : J.offdiag[j - 1];
        double p_next = ((x - J.diag[j]) * p - b_prev * p_prev) / J.offdiag[j];
        double d_next = ((x - J.diag[j]) * d + p - b_prev * d_prev) / J.offdiag[j];
        p_prev = p;
        p = p_next;
        d_prev = d;
        d = d_next;
    }
    return {sum_sq, (d != 0.0) ? p / d : 0.0};
}

std::shared_ptr<const QuadratureRule> build_rule(int size, double s) {
    const JacobiMatrix J = jacobi_matrix(size, s, 0.0);
    Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(J.diag.data(), size);
    Eigen::VectorXd sub =
        Eigen::Map<const Eigen::VectorXd>(J.offdiag.data(), size > 1 ? size - 1 : 0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw QuadratureFailure("tridiagonal eigensolver failed for N=" + std::to_string(size));

    auto rule = std::make_shared<QuadratureRule>();
    rule->size = size;
    rule->s = s;
    rule->nodes.resize(size);
    rule->weights.resize(size);
    const double scale = std::exp2(-s - 1.0);
    for (int k = 0; k < size; ++k) {
        double x = solver.eigenvalues()[k];
        for (int it = 0; it < 2; ++it) {
            double step = evaluate(J, size, x).newton_step;
            if (std::isfinite(step) && std::fabs(step) < 1e-8)
                x -= step;
        }
        Evaluation e = evaluate(J, size, x);
        rule->nodes[k] = 0.5 * (1.0 + x);
        // sum_sq overflows where the weight is far below double range
        rule->weights[k] = std::isfinite(e.sum_sq) ? scale / e.sum_sq : 0.0;
    }
    return rule;
}

}  // namespace

std::shared_ptr<const QuadratureRule> gauss_jacobi_rule(int size, double s) {
    if (size < 1)
        throw QuadratureFailure("rule size must be positive");
    if (!(s > -1.0))
        throw QuadratureFailure("Jacobi weight exponent must exceed -1");
    static std::mutex mutex;
    static std::map<std::pair<int, double>, std::shared_ptr<const QuadratureRule>> cache;
    const auto key = std::make_pair(size, s);
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find(key);
        if (it != cache.end())
            return it->second;
    }
    auto rule = build_rule(size, s);
    std::lock_guard<std::mutex> lock(mutex);
    auto [it, inserted] = cache.emplace(key, rule);
    return it->second;
}

QuadratureResult integrate_jacobi(const std::function<double(double)>& f, double s, double tol,
                                  int n_start, int n_max) {
    auto apply = [&](int size) {
        auto rule = gauss_jacobi_rule(size, s);
        double acc = 0.0, comp = 0.0;
        for (int k = 0; k < size; ++k) {
            double y = rule->weights[k] * f(rule->nodes[k]) - comp;
            double t = acc + y;
            comp = (t - acc) - y;
            acc = t;
        }
        return acc;
    };
    double prev = apply(n_start);
    for (int size = 2 * n_start; size <= n_max; size *= 2) {
        double cur = apply(size);
        double change = std::fabs(cur - prev);
        if (change <= tol * std::fabs(cur) || change == 0.0)
            return {cur, size, change};
        prev = cur;
    }
    throw QuadratureFailure("Gauss-Jacobi did not reach tolerance " + std::to_string(tol) +
                            " with " + std::to_string(n_max) + " nodes (s=" + std::to_string(s) +
                            ")");
}

}  // namespace mhk
