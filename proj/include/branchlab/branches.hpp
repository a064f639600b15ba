#pragma once

// Evaluation of every integer branch W_k of the Lambert W function. A branch is
// defined by the equation (E_k): w + Log w = Log x + 2 k pi i with the
// principal logarithm, except for x in [-1/e, 0[ where W_0 and W_{-1} are the
// two real solutions of E_0 on either side of -1.

#include <cstddef>
#include <optional>
#include <string_view>

#include "branchlab/common.hpp"

namespace branchlab {

using BranchIndex = long;

enum class BranchCase {
    unique_ek,        // E_k has exactly one solution, which is W_k(x)
    real_pair_on_e0,  // x in [-1/e, 0[, k in {0, -1}: W_k is a real root of E_0
    nonexistent_ek,   // x in [-1/e, 0[, k = -1: E_{-1} itself has no solution
};

std::string_view to_string(BranchCase c);

struct BranchStatus {
    bool exists;               // whether E_k has a solution
    BranchCase equation_case;  // classification of E_k
    BranchCase value_case;     // how W_k(x) is characterised
};

// Throws DomainError for x = 0.
BranchStatus branch_exists(BranchIndex k, Complex x);

enum class EvalMethod { halley, series_w0, series_asymptotic, integral };

std::string_view to_string(EvalMethod m);

struct EvalReport {
    Complex value;
    double residual = 0.0;     // |w e^w - x| / max(1, |x|)
    double ek_residual = 0.0;  // |w + Log w - Log x - 2 k' pi i|, k' the equation solved
    EvalMethod method = EvalMethod::halley;
    std::size_t steps = 0;
};

struct PrecisionConfig {
    double tol = 1e-13;
    std::size_t max_iter = 60;
};

double defining_residual(Complex w, Complex x);
double ek_residual(BranchIndex k, Complex w, Complex x);

// The equation index whose residual certifies W_k(x): 0 for the real pair,
// k otherwise.
BranchIndex certifying_equation(BranchIndex k, Complex x);

// Halley iteration on w e^w - x from several seeds; the first result that
// satisfies both residual contracts is returned. Throws DomainError for x = 0
// and ConvergenceError when no seed certifies.
EvalReport lambert_w(BranchIndex k, Complex x, const PrecisionConfig& cfg = {});

// Partial sum of the W_0 power series through z^n_terms. Refuses |z| > 0.34.
EvalReport w0_series(Complex z, std::size_t n_terms);
inline constexpr double kW0SeriesRadius = 0.34;

// W_k'(x) = W_k(x) / (x (1 + W_k(x))). Throws DomainError at the branch point.
Complex w_derivative(BranchIndex k, Complex x, const PrecisionConfig& cfg = {});
// Same formula for an already computed w = W_k(x).
Complex w_derivative_from_value(Complex x, Complex w);

// 2k pi i - log(2k pi i) + log x + (log(2k pi i) - log x) / (2k pi i).
Complex asymptotic_w(BranchIndex k, Complex x);

struct AnnulusReport {
    bool holds = false;  // (2k-1) pi < |W_k(x)| < (2k+1) pi for every k in range
    // Smallest k in range from which the inequality holds up to k_max.
    std::optional<BranchIndex> first_k;
};

AnnulusReport annulus_check(BranchIndex k_min, BranchIndex k_max, Complex x,
                            const PrecisionConfig& cfg = {});

}  // namespace branchlab
