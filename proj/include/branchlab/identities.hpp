#pragma once

// Symmetric sums and products over all branches W_k(x), |k| <= K, compared
// with their closed forms.

#include <cstddef>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "branchlab/branches.hpp"

namespace branchlab {

enum class IdentityId {
    INV_SHIFT,      // sum 1/(W - t)
    PINELIS,        // sum 1/(W + 1)
    INV1,           // sum 1/W
    INV2,           // sum 1/W^2
    INV3,           // sum 1/W^3
    PAIR_SHIFT,     // sum 1/((W + 1)(W - t))
    SQ_SHIFT,       // sum 1/(W - t)^2
    PINELIS2,       // sum 1/(W + 1)^2
    PAIR_SHIFT2,    // sum 1/((W + 1)(W - t)^2)
    PINELIS3,       // sum 1/(W + 1)^3
    DERIV_SHIFT,    // sum W'/(W - t)
    DERIV_RATIO,    // sum W'/W
    QUAD,           // sum 1/(W^2 + t^2)
    QUAD_W,         // sum W/(W^2 + t^2)
    PROD_FUND,      // prod (1 - t/W)
    PROD_HADAMARD,  // prod (1 - t/W) e^{t/W}
    CONST_SUM,      // sum W + log(pi^{2K} (2K)!) - (2K + 1/2) log x
    PROD_LIMIT,     // prod (W - t) / (pi^{2K} (2K)!)
};

inline constexpr IdentityId kSumIdentities[] = {
    IdentityId::INV_SHIFT, IdentityId::PINELIS,     IdentityId::INV1,        IdentityId::INV2,
    IdentityId::INV3,      IdentityId::PAIR_SHIFT,  IdentityId::SQ_SHIFT,    IdentityId::PINELIS2,
    IdentityId::PAIR_SHIFT2, IdentityId::PINELIS3,  IdentityId::DERIV_SHIFT, IdentityId::DERIV_RATIO,
    IdentityId::QUAD,      IdentityId::QUAD_W,
};

inline constexpr IdentityId kAllIdentities[] = {
    IdentityId::INV_SHIFT,   IdentityId::PINELIS,     IdentityId::INV1,        IdentityId::INV2,
    IdentityId::INV3,        IdentityId::PAIR_SHIFT,  IdentityId::SQ_SHIFT,    IdentityId::PINELIS2,
    IdentityId::PAIR_SHIFT2, IdentityId::PINELIS3,    IdentityId::DERIV_SHIFT, IdentityId::DERIV_RATIO,
    IdentityId::QUAD,        IdentityId::QUAD_W,      IdentityId::PROD_FUND,   IdentityId::PROD_HADAMARD,
    IdentityId::CONST_SUM,   IdentityId::PROD_LIMIT,
};

std::string_view to_string(IdentityId id);
IdentityId identity_from_string(std::string_view name);
bool uses_t(IdentityId id);

// Closed form of the identity. Throws DomainError near a pole (|denominator| < 1e-8).
Complex closed_form(IdentityId id, Complex x, Complex t);

// W_k(x) for -K_max <= k <= K_max + 1, evaluated once and shared by all
// identities at this x.
class BranchSweep {
public:
    BranchSweep(Complex x, long K_max, const PrecisionConfig& cfg = sweep_config());

    Complex x() const noexcept { return x_; }
    long K_max() const noexcept { return K_max_; }
    Complex operator[](long k) const { return values_.at(static_cast<std::size_t>(k + K_max_)); }

    // Residual tolerance used for sweeps: |W| reaches ~2 pi K_max, where the
    // default 1e-13 is below the double-precision floor of |w e^w - x|.
    static PrecisionConfig sweep_config() { return {1e-10, 60}; }

private:
    Complex x_;
    long K_max_;
    std::vector<Complex> values_;
};

struct SumOptions {
    // Truncate over k in [-K, K + 1] instead of [-K, K].
    bool asymmetric = false;
    // Replace the partial by a two-point extrapolation from K and 2K under an
    // error model c log(K)/K; the report is then labelled accelerated.
    bool accelerate = false;
    std::vector<long> trend_points{10, 100, 1000};
};

struct SumReport {
    IdentityId id = IdentityId::PINELIS;
    Complex x;
    Complex t;
    long K = 0;
    Complex partial;
    Complex closed_form;
    double abs_err = 0.0;
    double rel_err = 0.0;
    std::vector<std::pair<long, double>> err_trend;
    bool accelerated = false;
    bool asymmetric = false;
    // For PROD_HADAMARD: |partial - fundamental partial * exp(t sum 1/W)|.
    std::optional<double> cross_relation_err;
    // Reports flagged informational are not part of any pass/fail decision.
    bool informational = false;
};

// Evaluates any identity. The sweep must cover K (and 2K when accelerating,
// K + 1 when asymmetric).
SumReport evaluate_identity(IdentityId id, const BranchSweep& sweep, Complex t, long K,
                            const SumOptions& opt = {});

// Convenience wrappers that build their own sweep.
SumReport symmetric_sum(IdentityId id, Complex x, Complex t, long K, const SumOptions& opt = {});
SumReport fundamental_product(Complex x, Complex t, long K);
SumReport hadamard_product(Complex x, Complex t, long K);
SumReport constant_sum(Complex x, long K);
SumReport product_limit(Complex x, Complex t, long K);

// Raw partial over the given range of k, without closed form.
Complex partial_value(IdentityId id, const BranchSweep& sweep, Complex t, long k_lo, long k_hi);

}  // namespace branchlab
