#pragma once

// Integral representation of the branches W_k(x) and the Jensen-formula
// check over the circle |w| = (2K+1) pi, both on double-exponential and
// periodic trapezoidal rules.

#include <cstddef>
#include <functional>
#include <string_view>
#include <vector>

#include "branchlab/branches.hpp"

namespace branchlab {

struct QuadConfig {
    std::size_t level_max = 10;
    double tol = 1e-10;
    // Half-width U of the trapezoidal range u in [-U, U].
    double truncation = 4.0;
};

void validate(const QuadConfig& qc);

struct QuadResult {
    Complex value;
    double error_estimate = 0.0;  // difference between the last two levels
    std::size_t level = 0;
    std::size_t evaluations = 0;
};

// Integrals over [0, inf) of several integrands sharing nodes, with
// t = exp((pi/2) sinh u) and trapezoidal steps 2^-level in u. Stops when every
// integral changes by at most tol * max(1, |value|) between levels (level >= 3).
// Throws ConvergenceError when level_max is reached first.
std::vector<QuadResult> exp_sinh_integrate(const std::function<std::vector<Complex>(double)>& f,
                                           std::size_t count, const QuadConfig& qc);

enum class IntegralCase { case1, case2 };

std::string_view to_string(IntegralCase c);
IntegralCase integral_case_from_string(std::string_view name);

struct IntegralSetup {
    IntegralCase which;
    double P;
    Complex K;
};

// Case 1: P = pi/2 + 1, K = 2k pi i + Log x, valid unless k in {0, -1} with
// x in [-1/e, 0]. Case 2: P = pi/2 - 1, K = (2k - sign k) pi i + Log x, valid
// for k not in {-1, 0, 1}. Throws DomainError otherwise.
IntegralSetup integral_setup(BranchIndex k, Complex x, IntegralCase which);

struct IntegralDetail {
    IntegralSetup setup;
    Complex N;
    Complex D;
    QuadResult numerator_integral;
    QuadResult denominator_integral;
};

// W_k(x) = N/D (case 1) or -N/D (case 2). The result is certified against
// |w e^w - x| <= max(tol, 1e-8) max(1, |x|) and the branch equation E_k;
// a failed certificate throws ConvergenceError.
EvalReport integral_w(BranchIndex k, Complex x, IntegralCase which, const QuadConfig& qc = {},
                      IntegralDetail* detail = nullptr);

// log |w e^w - x| without overflow for large Re w.
double log_abs_f(Complex w, double x);

struct JensenIntegral {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t points = 0;
    double clearance = 0.0;  // min over nearby branches of ||W_k(x)| - rho|
};

// I(rho) = integral over [0, 2 pi] of log |f(rho e^{i theta})|, f(w) = w e^w - x,
// by the periodic trapezoidal rule with doubling. rho must be (2K+1) pi and
// x > 0; refuses (DomainError) when a branch value lies within 0.1 of the circle
// or the zeros inside are not exactly W_k(x), |k| <= K.
JensenIntegral jensen_I(double rho, double x, const QuadConfig& qc = {});

// Plain periodic trapezoidal rule for I(rho) with n equispaced points.
double jensen_trapezoid(double rho, double x, std::size_t n);

// pi log rho + 2 rho + pi log x.
double jensen_asymptotic(double rho, double x);

struct JensenReport {
    long K = 0;
    double x = 0.0;
    double lhs = 0.0;  // sum of Re W_k(x), |k| <= K
    double rhs = 0.0;  // 2K log x - (2K+1) log rho + I(rho) / (2 pi)
    double residual = 0.0;
    JensenIntegral integral;
};

JensenReport jensen_check(long K, double x, const QuadConfig& qc = {});

}  // namespace branchlab
