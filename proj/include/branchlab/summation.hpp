#pragma once

#include <cmath>

#include "branchlab/common.hpp"

namespace branchlab {

// Neumaier compensated summation, applied to real and imaginary parts.
class CompensatedSum {
public:
    void add(Complex v) {
        add_part(sum_re_, c_re_, v.real());
        add_part(sum_im_, c_im_, v.imag());
    }
    Complex value() const { return {sum_re_ + c_re_, sum_im_ + c_im_}; }

private:
    static void add_part(double& sum, double& c, double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            c += (sum - t) + v;
        else
            c += (v - t) + sum;
        sum = t;
    }

    double sum_re_ = 0.0, c_re_ = 0.0, sum_im_ = 0.0, c_im_ = 0.0;
};

}  // namespace branchlab
