#pragma once

#include <cmath>
#include <complex>

namespace mhk {

using Complex = std::complex<double>;

// A summed value with the number of retained terms and an estimate of the
// discarded tail (absolute).
struct SeriesValue {
    Complex value{0.0, 0.0};
    int truncation_order = 0;
    double tail_estimate = 0.0;

    double real() const { return value.real(); }
};

// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class CompensatedComplexSum {
public:
    void add(Complex x) {
        re_.add(x.real());
        im_.add(x.imag());
    }
    Complex value() const { return {re_.value(), im_.value()}; }

private:
    CompensatedSum re_;
    CompensatedSum im_;
};

}  // namespace mhk
