#pragma once

// Real roots of the Lambert polynomials L_n and L_{n,k}, isolated by exact
// sign evaluation, and the numerical evidence they give on root location,
// interlacing and the asymptotics of the largest root.

#include <cstddef>
#include <utility>
#include <vector>

#include "branchlab/polycore.hpp"

namespace branchlab {

/// Polynomial with integer coefficients proportional (by a positive factor)
/// to a rational X-polynomial, for exact sign evaluation.
class ExactSignPoly {
public:
    explicit ExactSignPoly(const RationalPoly& p);

    long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
    // Sign (-1, 0, 1) of p at v.
    int sign_at(const Rational& v) const;
    // Descartes bound: sign changes in the coefficients of p(X + a), an upper
    // bound of the same parity on the number of roots greater than a.
    std::size_t descartes_above(const Rational& a) const;

private:
    std::vector<BigInt> c_;
};

struct RootReport {
    std::size_t n = 0;
    std::vector<double> roots;  // positive roots, ascending
    bool zero_root = false;     // L_n(0) = 0, reported apart from the positive roots
    bool isolation_certified = false;
    // max over the returned roots of |L_n(r)| / sum |c_i| r^i, evaluated exactly
    double residual_max = 0.0;
    std::size_t expected = 0;   // degree of L_n / X
    std::size_t grid_points = 0;
};

// Isolates the positive roots of L_n on [0, ceil(n + log n + 2)] from sign
// changes on an equispaced rational grid of 8n points, doubling up to
// max_doublings times, then bisects each bracket with exact signs to tol.
RootReport real_roots(std::size_t n, double tol = 1e-12, std::size_t max_doublings = 10);

// Same procedure for any X-polynomial on [0, upper].
RootReport positive_roots(const RationalPoly& p, const Rational& upper, double tol = 1e-12,
                          std::size_t max_doublings = 10);

// True iff each gap between consecutive positive roots of L_{n+1} contains
// exactly one positive root of L_n. Throws DomainError if either root set is
// not certified.
bool interlace_check(std::size_t n, double tol = 1e-12);
bool interlace(const RootReport& lower, const RootReport& upper);

// The polynomial whose largest root is studied for index k: L_n for k = 1,
// L_{n,k} for k >= 2, the (1-k)-th derivative of L_n for k <= 0.
RationalPoly root_family_poly(std::size_t n, long k, const StirlingTable& table);

struct TopRoots {
    std::vector<double> roots;  // descending
    // Descartes' bound above the lowest bracket equals the number of roots found.
    bool certified = false;
};

// The j_max largest positive roots, scanning down from an upper bound past
// which Descartes' rule excludes roots.
TopRoots top_roots(const RationalPoly& p, std::size_t j_max, double tol = 1e-13);

// n + log n + gamma + k - 1.
double max_root_main_term(std::size_t n, long k);

struct FitReport {
    long k = 1;
    std::size_t n_lo = 0, n_hi = 0, step = 0;
    std::vector<std::pair<std::size_t, double>> estimates;  // n (maxroot - main term)
    std::vector<std::pair<std::size_t, double>> extrapolation_table;
    double c0_estimate = 0.0;
    // Change of the extrapolated value over the last three rows.
    double extrapolation_error = 0.0;
    std::vector<std::size_t> failures;  // n where the largest root was not certified
};

// Estimates C_0(k) by three-point polynomial extrapolation in 1/n of
// n (maxroot - main term) over n = n_lo, n_lo + step, ..., n_hi.
FitReport max_root_fit(long k, std::size_t n_lo, std::size_t n_hi, std::size_t step = 10);

struct JthRootRow {
    std::size_t j = 0;
    double root = 0.0;       // j-th largest root of L_n
    double predicted = 0.0;  // n/j + sum_{m=j..n} 1/m
    double gap = 0.0;        // root - predicted
};

// Throws DomainError if j_max exceeds the number of positive roots or the
// top j_max roots cannot be certified.
std::vector<JthRootRow> jth_root_check(std::size_t n, std::size_t j_max);

}  // namespace branchlab
