#pragma once

// Convergent expansions of W_k(x) in powers of 1/K with Lambert-polynomial
// coefficients evaluated at M = K + Log K - Log x - 2 k pi i.

#include <cstddef>
#include <map>
#include <mutex>
#include <optional>
#include <string_view>
#include <vector>

#include "branchlab/branches.hpp"
#include "branchlab/polycore.hpp"

namespace branchlab {

enum class SeriesVariant { general, two_k_pi_i, two_k_pi_i_plus_logx, k_minus1_real, shifted_K1 };

std::string_view to_string(SeriesVariant v);
SeriesVariant series_variant_from_string(std::string_view name);

struct SeriesFrame {
    BranchIndex k = 0;
    Complex x;
    SeriesVariant variant = SeriesVariant::general;
    Complex K;
    Complex M;
    // Equation whose bookkeeping defines M: 0 for k_minus1_real, k otherwise.
    BranchIndex k_eq = 0;
};

// K per variant:
//   general               caller-supplied K
//   two_k_pi_i            2 k pi i (k != 0)
//   two_k_pi_i_plus_logx  2 k pi i + Log x
//   k_minus1_real         log(-x), for k = -1 and real x in [-1/e, 0[
//   shifted_K1            2 k pi i + Log x - 1, so that K + 1 = 2 k pi i + Log x
SeriesFrame make_frame(BranchIndex k, Complex x, SeriesVariant variant,
                       std::optional<Complex> general_K = std::nullopt);

// log|K| + 1 - Re M + min_m Re W_m(-e^{M-1}) with m in {-1, 0} when Im M <= 0
// and m in {0, 1} when Im M > 0; the expansions converge exactly when this is
// positive, and exp(-margin) is the asymptotic ratio of successive terms.
double convergence_margin(const SeriesFrame& f, const PrecisionConfig& cfg = {});
// Same expression with m in {-1, 0} regardless of the sign of Im M.
double convergence_margin_literal(const SeriesFrame& f, const PrecisionConfig& cfg = {});
bool series_converges(const SeriesFrame& f, const PrecisionConfig& cfg = {});
// The cruder sufficient condition 2(1 + |M|) < |K|.
bool series_bound_holds(const SeriesFrame& f);

// One polynomial of a family, kept exactly and as binary64.
struct CoefficientRow {
    std::vector<Rational> exact;
    std::vector<double> coeffs;
    std::vector<double> abs_coeffs;
    bool in_Y = false;  // evaluate at 1/M instead of M

    CoefficientRow() = default;
    explicit CoefficientRow(const RationalPoly& p);
};

// Value of the row at v, to be multiplied by `weight` (the 1/K^n factor).
// Binary64 Horner is used when its rounding error, scaled by weight, is below
// 1e-18; otherwise the row is evaluated in multiprecision floating point.
Complex evaluate_row(const CoefficientRow& row, Complex v, double weight);

// The polynomial families needed by the expansions, built once and shared.
class SeriesCoefficients {
public:
    explicit SeriesCoefficients(std::size_t n_max);

    std::size_t n_max() const noexcept { return n_max_; }
    const StirlingTable& stirling() const noexcept { return table_; }

    const CoefficientRow& L(std::size_t n) const { return L_.at(n); }
    const CoefficientRow& dL(std::size_t n) const { return dL_.at(n); }
    const CoefficientRow& d2L(std::size_t n) const { return d2L_.at(n); }
    const CoefficientRow& P(std::size_t n) const { return P_.at(n); }

    // L_{n,j} for n = 0..n_max, built on first request.
    const std::vector<CoefficientRow>& power(long j) const;

private:
    std::size_t n_max_;
    StirlingTable table_;
    std::vector<CoefficientRow> L_, dL_, d2L_, P_;
    mutable std::mutex mutex_;
    mutable std::map<long, std::vector<CoefficientRow>> powers_;
};

struct SeriesOptions {
    std::size_t N = 120;
    // Stop once five consecutive terms are below tol * |partial sum|.
    bool early_stop = true;
    double tol = 1e-16;
    // Evaluate frames that fail the convergence predicate; the result is flagged.
    bool allow_divergent = false;
    PrecisionConfig predicate_cfg{1e-12, 60};
};

struct SeriesResult {
    Complex value;
    std::size_t terms_used = 0;
    double last_term_magnitude = 0.0;
    bool converged_flag = false;  // predicate true for the frame
    double margin = 0.0;          // convergence_margin of the frame
    // last_term_magnitude / (1 - exp(-margin)): geometric estimate of the
    // truncation error; infinite for divergent frames.
    double tail_estimate = 0.0;
};

SeriesResult w_series(const SeriesFrame& f, const SeriesCoefficients& c, const SeriesOptions& opt = {});
SeriesResult log_w_series(const SeriesFrame& f, const SeriesCoefficients& c, const SeriesOptions& opt = {});

enum class AuxKind { power_j, reciprocal_shift, inv_one_plus_w, log_ratio };

std::string_view to_string(AuxKind a);

struct AuxSpec {
    AuxKind kind = AuxKind::inv_one_plus_w;
    long j = 1;  // power_j only; nonzero
};

SeriesResult aux_series(const SeriesFrame& f, AuxSpec which, const SeriesCoefficients& c,
                        const SeriesOptions& opt = {});

// Left-hand side of the auxiliary expansion computed from W directly.
Complex aux_direct(const SeriesFrame& f, AuxSpec which, Complex w);

// W = K1 - 1 + sum_N P_N(M) / K1^N with K1 = K + 1.
SeriesResult w_series_shifted(const SeriesFrame& f, const SeriesCoefficients& c,
                              const SeriesOptions& opt = {});

// |L_n(M) / K^n| for n = 0..N, for decay diagnostics.
std::vector<double> w_series_terms(const SeriesFrame& f, std::size_t N, const SeriesCoefficients& c);

}  // namespace branchlab
