#include "branchlab/branches.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace branchlab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kBranchPointRadius = 1e-12;

Complex canonical(Complex x) {
    return x.imag() == 0.0 ? Complex(x.real(), 0.0) : x;
}

bool in_real_pair_interval(Complex x) {
    return x.imag() == 0.0 && x.real() < 0.0 && x.real() >= -kInvE;
}

struct HalleyResult {
    Complex w;
    std::size_t steps;
};

HalleyResult halley(Complex w, Complex x, const PrecisionConfig& cfg) {
    double last_step = std::numeric_limits<double>::infinity();
    std::size_t i = 0;
    for (; i < cfg.max_iter; ++i) {
        const Complex ew = std::exp(w);
        const Complex f = w * ew - x;
        if (f == 0.0) break;
        const Complex wp1 = w + 1.0;
        const Complex denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        const Complex dw = f / denom;
        if (!std::isfinite(dw.real()) || !std::isfinite(dw.imag())) break;
        w -= dw;
        const double step = std::abs(dw);
        if (step <= 4.0 * kEps * (1.0 + std::abs(w))) {
            ++i;
            break;
        }
        // Round-off stagnation.
        if (step >= last_step && step <= 1e-8 * (1.0 + std::abs(w))) {
            ++i;
            break;
        }
        last_step = step;
    }
    return {w, i};
}

// Four-term truncation of W = K + sum L_n(M)/K^n with K = 2k pi i + Log x, M = Log K.
std::optional<Complex> asymptotic_seed(BranchIndex k, Complex x) {
    const Complex K = 2.0 * kPi * static_cast<double>(k) * kI + principal_log(x);
    if (std::abs(K) < 1e-3) return std::nullopt;
    const Complex M = principal_log(K);
    const Complex M2 = M * M;
    return K - M + M / K + (M2 / 2.0 - M) / (K * K) + (M2 * M / 3.0 - 1.5 * M2 + M) / (K * K * K);
}

std::vector<Complex> candidate_seeds(BranchIndex k, Complex x, bool real_pair) {
    std::vector<Complex> seeds;
    const Complex p = std::sqrt(2.0 * (kE * x + 1.0));
    const Complex bp_plus = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
    const Complex bp_minus = -1.0 - p - p * p / 3.0 - 11.0 / 72.0 * p * p * p;

    if (real_pair) {
        const double xr = x.real();
        if (k == 0) {
            if (xr > -0.25) seeds.push_back(xr - xr * xr + 1.5 * xr * xr * xr);
            seeds.push_back(bp_plus);
        } else {
            if (xr > -0.25) {
                // K = log(-x), M = log(-K): the real expansion for W_{-1}
                const double K = std::log(-xr);
                const double M = std::log(-K);
                seeds.push_back(K - M + M / K);
            }
            seeds.push_back(bp_minus);
        }
        return seeds;
    }

    if (k == 0 && std::abs(x) <= 0.25) seeds.push_back(x - x * x + 1.5 * x * x * x);
    const bool near_branch_point = std::abs(x + kInvE) < 0.3;
    if (near_branch_point && k == 0) seeds.push_back(bp_plus);
    if (near_branch_point && (k == 1 || k == -1)) {
        seeds.push_back(bp_minus);
        seeds.push_back(bp_plus);
    }
    if (auto s = asymptotic_seed(k, x)) seeds.push_back(*s);
    if (k == 0) {
        if (std::abs(1.0 + x) > 1e-3) seeds.push_back(principal_log(1.0 + x));
        seeds.push_back(Complex(0.5, 0.0));
        seeds.push_back(bp_plus);
    }
    if (k == 1 || k == -1) {
        seeds.push_back(bp_minus);
        seeds.push_back(Complex(-1.5, 4.0 * static_cast<double>(k)));
    }
    return seeds;
}

}  // namespace

std::string_view to_string(BranchCase c) {
    switch (c) {
        case BranchCase::unique_ek: return "unique-Ek";
        case BranchCase::real_pair_on_e0: return "real-pair-on-E0";
        case BranchCase::nonexistent_ek: return "nonexistent-Ek";
    }
    return "?";
}

std::string_view to_string(EvalMethod m) {
    switch (m) {
        case EvalMethod::halley: return "halley";
        case EvalMethod::series_w0: return "series_w0";
        case EvalMethod::series_asymptotic: return "series_asymptotic";
        case EvalMethod::integral: return "integral";
    }
    return "?";
}

BranchStatus branch_exists(BranchIndex k, Complex x) {
    if (x == 0.0) throw DomainError("branch_exists: x must be nonzero");
    x = canonical(x);
    if (in_real_pair_interval(x) && (k == 0 || k == -1)) {
        if (k == -1) return {false, BranchCase::nonexistent_ek, BranchCase::real_pair_on_e0};
        return {true, BranchCase::real_pair_on_e0, BranchCase::real_pair_on_e0};
    }
    return {true, BranchCase::unique_ek, BranchCase::unique_ek};
}

BranchIndex certifying_equation(BranchIndex k, Complex x) {
    x = canonical(x);
    return (in_real_pair_interval(x) && (k == 0 || k == -1)) ? 0 : k;
}

double defining_residual(Complex w, Complex x) {
    return std::abs(w * std::exp(w) - x) / std::max(1.0, std::abs(x));
}

double ek_residual(BranchIndex k, Complex w, Complex x) {
    x = canonical(x);
    return std::abs(w + principal_log(w) - principal_log(x) - 2.0 * kPi * static_cast<double>(k) * kI);
}

EvalReport lambert_w(BranchIndex k, Complex x, const PrecisionConfig& cfg) {
    if (x == 0.0) throw DomainError("lambert_w: x must be nonzero");
    if (!(cfg.tol > 0.0)) throw DomainError("lambert_w: tol must be positive");
    x = canonical(x);
    const bool real_pair = (k == 0 || k == -1) && in_real_pair_interval(x);
    const BranchIndex k_eq = certifying_equation(k, x);

    if ((k == 0 || k == -1) && std::abs(x + kInvE) < kBranchPointRadius) {
        const Complex w(-1.0, 0.0);
        return {w, defining_residual(w, x), ek_residual(k_eq, w, x), EvalMethod::halley, 0};
    }

    double best = std::numeric_limits<double>::infinity();
    std::size_t total_steps = 0;
    for (Complex seed : candidate_seeds(k, x, real_pair)) {
        auto [w, steps] = halley(seed, x, cfg);
        total_steps += steps;
        const double r = defining_residual(w, x);
        const double e = ek_residual(k_eq, w, x);
        bool ok = r <= cfg.tol && e <= cfg.tol * (1.0 + std::abs(w));
        if (ok && real_pair) {
            const bool ordered = k == 0 ? w.real() >= -1.0 : w.real() <= -1.0;
            ok = ordered && std::abs(w.imag()) <= cfg.tol;
        }
        if (ok) return {w, r, e, EvalMethod::halley, total_steps};
        if (std::isfinite(r) && std::isfinite(e)) best = std::min(best, std::max(r, e));
    }
    throw ConvergenceError("lambert_w: no certified solution for k=" + std::to_string(k), best);
}

EvalReport w0_series(Complex z, std::size_t n_terms) {
    if (std::abs(z) > kW0SeriesRadius)
        throw DomainError("w0_series: |z| too close to 1/e; use lambert_w");
    z = canonical(z);
    Complex sum = 0.0;
    Complex zn = 1.0;
    for (std::size_t n = 1; n <= n_terms; ++n) {
        zn *= z;
        const double nd = static_cast<double>(n);
        const double mag = std::exp((nd - 1.0) * std::log(nd) - std::lgamma(nd + 1.0));
        sum += (n % 2 == 1 ? mag : -mag) * zn;
    }
    EvalReport r{sum, 0.0, 0.0, EvalMethod::series_w0, n_terms};
    if (z != 0.0) {
        r.residual = defining_residual(sum, z);
        r.ek_residual = ek_residual(0, sum, z);
    }
    return r;
}

Complex w_derivative(BranchIndex k, Complex x, const PrecisionConfig& cfg) {
    return w_derivative_from_value(x, lambert_w(k, x, cfg).value);
}

Complex w_derivative_from_value(Complex x, Complex w) {
    if (std::abs(1.0 + w) < 1e-8) throw DomainError("w_derivative: branch point singularity");
    return w / (x * (1.0 + w));
}

Complex asymptotic_w(BranchIndex k, Complex x) {
    if (k == 0) throw DomainError("asymptotic_w: k must be nonzero");
    if (x == 0.0) throw DomainError("asymptotic_w: x must be nonzero");
    const Complex K = 2.0 * kPi * static_cast<double>(k) * kI;
    const Complex L = principal_log(K);
    const Complex X = principal_log(canonical(x));
    return K - L + X + (L - X) / K;
}

AnnulusReport annulus_check(BranchIndex k_min, BranchIndex k_max, Complex x, const PrecisionConfig& cfg) {
    AnnulusReport rep;
    rep.holds = true;
    for (BranchIndex k = k_max; k >= k_min; --k) {
        const double r = std::abs(lambert_w(k, x, cfg).value);
        const double kd = static_cast<double>(k);
        const bool ok = (2.0 * kd - 1.0) * kPi < r && r < (2.0 * kd + 1.0) * kPi;
        if (!ok) rep.holds = false;
        if (rep.holds) rep.first_k = k;
    }
    return rep;
}

}  // namespace branchlab
