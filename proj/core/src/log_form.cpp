#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <map>
#include <utility>

#include "mhk/special.hpp"

namespace mhk {

namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::mpfr_float;

// Sum of c * z^i * (1-z)^j with exact integer coefficients.
using Terms = std::map<std::pair<int, int>, cpp_int>;

// f = rational + logpart * log(1-z)
struct LogExpr {
    Terms rational;
    Terms logpart;
};

void accumulate(Terms& t, int i, int j, const cpp_int& c) {
    if (c == 0)
        return;
    auto [it, inserted] = t.try_emplace({i, j}, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            t.erase(it);
    }
}

Terms derive(const Terms& in) {
    Terms out;
    for (const auto& [ij, c] : in) {
        auto [i, j] = ij;
        if (i != 0)
            accumulate(out, i - 1, j, c * i);
        if (j != 0)
            accumulate(out, i, j - 1, -c * j);
    }
    return out;
}

LogExpr derive(const LogExpr& f) {
    LogExpr g;
    g.rational = derive(f.rational);
    g.logpart = derive(f.logpart);
    // d/dz log(1-z) = -(1-z)^(-1)
    for (const auto& [ij, c] : f.logpart)
        accumulate(g.rational, ij.first, ij.second - 1, -c);
    return g;
}

void shift(Terms& t, int dj) {
    Terms out;
    for (const auto& [ij, c] : t)
        out.emplace(std::make_pair(ij.first, ij.second + dj), c);
    t.swap(out);
}

// log10 of sum |c z^i (1-z)^j|, without overflow.
double log10_magnitude(const Terms& t, double z, double logfac) {
    double best = -1e300;
    double acc = 0.0;
    const double lz = std::log10(z);
    const double l1z = std::log10(1.0 - z);
    for (const auto& [ij, c] : t) {
        double lc = std::log10(std::fabs(c.convert_to<double>()));
        double v = lc + ij.first * lz + ij.second * l1z + logfac;
        if (v > best) {
            acc = acc * std::pow(10.0, best - v) + 1.0;
            best = v;
        } else {
            acc += std::pow(10.0, v - best);
        }
    }
    return best + std::log10(std::max(acc, 1.0));
}

mpfr_float evaluate(const Terms& t, const mpfr_float& z, const mpfr_float& omz) {
    mpfr_float s = 0;
    for (const auto& [ij, c] : t) {
        mpfr_float term = mpfr_float(c);
        term *= pow(z, ij.first);
        term *= pow(omz, ij.second);
        s += term;
    }
    return s;
}

cpp_int factorial(int k) {
    cpp_int f = 1;
    for (int i = 2; i <= k; ++i)
        f *= i;
    return f;
}

}  // namespace

double f21_log_form(int n, int m, int l, double z) {
    if (n < 0 || m < 0 || l < 0)
        throw DomainError("f21_log_form: indices must be non-negative");
    if (!(z >= 0.0 && z < 1.0))
        throw DomainError("f21_log_form: z must lie in [0, 1)");
    if (z == 0.0)
        return 1.0;

    LogExpr f;
    f.logpart.emplace(std::make_pair(-1, 0), cpp_int(1));
    for (int k = 0; k < l; ++k)
        f = derive(f);
    shift(f.rational, m + l);
    shift(f.logpart, m + l);
    for (int k = 0; k < n + m; ++k)
        f = derive(f);

    const cpp_int num = factorial(n + m + l + 1);
    const cpp_int den = factorial(l) * factorial(n) * factorial(m + n) * factorial(m + l);

    // Enough digits to absorb the cancellation between the symbolic terms;
    // the result itself is at least 1.
    double lfac = std::log10(num.convert_to<double>()) - std::log10(den.convert_to<double>());
    double logl = std::log10(std::max(std::fabs(std::log1p(-z)), 1e-300));
    double mag = std::max(log10_magnitude(f.rational, z, lfac),
                          f.logpart.empty() ? -1e300 : log10_magnitude(f.logpart, z, lfac) + logl);
    unsigned digits = static_cast<unsigned>(30.0 + std::max(0.0, mag));

    const unsigned saved = mpfr_float::default_precision();
    mpfr_float::default_precision(digits);
    mpfr_float zz = z;
    mpfr_float omz = mpfr_float(1) - zz;
    mpfr_float value = evaluate(f.rational, zz, omz) + evaluate(f.logpart, zz, omz) * log(omz);
    value *= mpfr_float(num);
    value /= mpfr_float(den);
    if (m % 2 == 0)
        value = -value;
    double out = value.convert_to<double>();
    mpfr_float::default_precision(saved);
    return out;
}

}  // namespace mhk
