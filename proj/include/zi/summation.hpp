#pragma once

#include <cmath>
#include <complex>

namespace zi {

using cplx = std::complex<double>;

// Neumaier's variant of Kahan summation. Robust when a term is larger in
// magnitude than the running sum.
class CompensatedSum {
public:
    void add(double v) noexcept {
        double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    void add(const CompensatedSum& other) noexcept {
        add(other.sum_);
        add(other.comp_);
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class CompensatedComplexSum {
public:
    void add(cplx v) noexcept {
        re_.add(v.real());
        im_.add(v.imag());
    }
    void add(const CompensatedComplexSum& other) noexcept {
        re_.add(other.re_);
        im_.add(other.im_);
    }
    cplx value() const noexcept { return {re_.value(), im_.value()}; }

private:
    CompensatedSum re_;
    CompensatedSum im_;
};

} // namespace zi
