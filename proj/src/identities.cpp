#include "branchlab/identities.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "branchlab/summation.hpp"

namespace branchlab {

namespace {

constexpr double kPoleGuard = 1e-8;

Complex guarded(Complex denom, const char* what) {
    if (std::abs(denom) < kPoleGuard) throw DomainError(std::string(what) + ": too close to a pole");
    return denom;
}

// Per-branch summand of the sum identities.
Complex term(IdentityId id, Complex x, Complex t, Complex w) {
    switch (id) {
        case IdentityId::INV_SHIFT: return 1.0 / guarded(w - t, "INV_SHIFT");
        case IdentityId::PINELIS: return 1.0 / guarded(w + 1.0, "PINELIS");
        case IdentityId::INV1: return 1.0 / w;
        case IdentityId::INV2: return 1.0 / (w * w);
        case IdentityId::INV3: return 1.0 / (w * w * w);
        case IdentityId::PAIR_SHIFT: return 1.0 / guarded((w + 1.0) * (w - t), "PAIR_SHIFT");
        case IdentityId::SQ_SHIFT: {
            const Complex d = guarded(w - t, "SQ_SHIFT");
            return 1.0 / (d * d);
        }
        case IdentityId::PINELIS2: {
            const Complex d = guarded(w + 1.0, "PINELIS2");
            return 1.0 / (d * d);
        }
        case IdentityId::PAIR_SHIFT2: {
            const Complex d = guarded(w - t, "PAIR_SHIFT2");
            return 1.0 / (guarded(w + 1.0, "PAIR_SHIFT2") * d * d);
        }
        case IdentityId::PINELIS3: {
            const Complex d = guarded(w + 1.0, "PINELIS3");
            return 1.0 / (d * d * d);
        }
        case IdentityId::DERIV_SHIFT: return w_derivative_from_value(x, w) / guarded(w - t, "DERIV_SHIFT");
        case IdentityId::DERIV_RATIO: return w_derivative_from_value(x, w) / w;
        case IdentityId::QUAD: return 1.0 / guarded(w * w + t * t, "QUAD");
        case IdentityId::QUAD_W: return w / guarded(w * w + t * t, "QUAD_W");
        default: break;
    }
    throw DomainError("term: not a sum identity");
}

// 2K log(pi) + log((2K)!), accumulated term by term.
double log_pi_factorial(long K) {
    CompensatedSum s;
    s.add(2.0 * static_cast<double>(K) * std::log(kPi));
    for (long j = 2; j <= 2 * K; ++j) s.add(std::log(static_cast<double>(j)));
    return s.value().real();
}

bool positive_real(Complex x) { return x.imag() == 0.0 && x.real() > 0.0; }

}  // namespace

std::string_view to_string(IdentityId id) {
    switch (id) {
        case IdentityId::INV_SHIFT: return "INV_SHIFT";
        case IdentityId::PINELIS: return "PINELIS";
        case IdentityId::INV1: return "INV1";
        case IdentityId::INV2: return "INV2";
        case IdentityId::INV3: return "INV3";
        case IdentityId::PAIR_SHIFT: return "PAIR_SHIFT";
        case IdentityId::SQ_SHIFT: return "SQ_SHIFT";
        case IdentityId::PINELIS2: return "PINELIS2";
        case IdentityId::PAIR_SHIFT2: return "PAIR_SHIFT2";
        case IdentityId::PINELIS3: return "PINELIS3";
        case IdentityId::DERIV_SHIFT: return "DERIV_SHIFT";
        case IdentityId::DERIV_RATIO: return "DERIV_RATIO";
        case IdentityId::QUAD: return "QUAD";
        case IdentityId::QUAD_W: return "QUAD_W";
        case IdentityId::PROD_FUND: return "PROD_FUND";
        case IdentityId::PROD_HADAMARD: return "PROD_HADAMARD";
        case IdentityId::CONST_SUM: return "CONST_SUM";
        case IdentityId::PROD_LIMIT: return "PROD_LIMIT";
    }
    return "?";
}

IdentityId identity_from_string(std::string_view name) {
    for (IdentityId id : kAllIdentities)
        if (to_string(id) == name) return id;
    throw DomainError("unknown identity: " + std::string(name));
}

bool uses_t(IdentityId id) {
    switch (id) {
        case IdentityId::INV_SHIFT:
        case IdentityId::PAIR_SHIFT:
        case IdentityId::SQ_SHIFT:
        case IdentityId::PAIR_SHIFT2:
        case IdentityId::DERIV_SHIFT:
        case IdentityId::QUAD:
        case IdentityId::QUAD_W:
        case IdentityId::PROD_FUND:
        case IdentityId::PROD_HADAMARD:
        case IdentityId::PROD_LIMIT: return true;
        default: return false;
    }
}

Complex closed_form(IdentityId id, Complex x, Complex t) {
    if (x == 0.0) throw DomainError("closed_form: x must be nonzero");
    const Complex xe = x * std::exp(-t);
    auto D = [&] { return guarded(xe - t, to_string(id).data()); };
    switch (id) {
        case IdentityId::INV_SHIFT: return 0.5 + (1.0 + t) / D();
        case IdentityId::PINELIS: return 0.5;
        case IdentityId::INV1: return 0.5 + 1.0 / x;
        case IdentityId::INV2: return (2.0 * x + 1.0) / (x * x);
        case IdentityId::INV3: return (3.0 * x * x + 6.0 * x + 2.0) / (2.0 * x * x * x);
        case IdentityId::PAIR_SHIFT: return 1.0 / D();
        case IdentityId::SQ_SHIFT: {
            const Complex d = D();
            return (xe * (2.0 + t) + 1.0) / (d * d);
        }
        case IdentityId::PINELIS2:
        case IdentityId::PINELIS3: return 1.0 / guarded(x * kE + 1.0, "PINELIS2/3");
        case IdentityId::PAIR_SHIFT2: {
            const Complex d = D();
            return (xe + 1.0) / (d * d);
        }
        case IdentityId::DERIV_SHIFT: return (0.5 + t / D()) / x;
        case IdentityId::DERIV_RATIO: return 1.0 / (2.0 * x);
        case IdentityId::QUAD:
        case IdentityId::QUAD_W: {
            const Complex s = std::sin(t), c = std::cos(t);
            const Complex sinc = t == 0.0 ? Complex(1.0) : s / t;
            const Complex q = guarded(x * x + 2.0 * x * t * s + t * t, "QUAD");
            if (id == IdentityId::QUAD) return (x * (c + sinc) + 1.0) / q;
            return 0.5 + (x * (c - t * s) - t * t) / q;
        }
        case IdentityId::PROD_FUND: return std::exp(-t / 2.0) - (t / x) * std::exp(t / 2.0);
        case IdentityId::PROD_HADAMARD: return std::exp(t / x) * (1.0 - (t / x) * std::exp(t));
        case IdentityId::CONST_SUM: return std::log(2.0) / 2.0;
        case IdentityId::PROD_LIMIT:
            return std::sqrt(x / 2.0) * (std::exp(-t / 2.0) - (t / x) * std::exp(t / 2.0));
    }
    throw DomainError("closed_form: unknown identity");
}

BranchSweep::BranchSweep(Complex x, long K_max, const PrecisionConfig& cfg) : x_(x), K_max_(K_max) {
    if (x == 0.0) throw DomainError("BranchSweep: x must be nonzero");
    if (K_max < 0) throw DomainError("BranchSweep: K must be nonnegative");
    values_.reserve(static_cast<std::size_t>(2 * K_max + 2));
    for (long k = -K_max; k <= K_max + 1; ++k) values_.push_back(lambert_w(k, x, cfg).value);
}

Complex partial_value(IdentityId id, const BranchSweep& sweep, Complex t, long k_lo, long k_hi) {
    if (k_lo < -sweep.K_max() || k_hi > sweep.K_max() + 1)
        throw DomainError("partial_value: range exceeds the branch sweep");
    const Complex x = sweep.x();
    switch (id) {
        case IdentityId::PROD_FUND:
        case IdentityId::PROD_HADAMARD: {
            Complex p = 1.0;
            for (long k = k_lo; k <= k_hi; ++k) {
                const Complex w = sweep[k];
                p *= 1.0 - t / w;
                if (id == IdentityId::PROD_HADAMARD) p *= std::exp(t / w);
            }
            return p;
        }
        case IdentityId::CONST_SUM: {
            const long K = -k_lo;
            CompensatedSum s;
            for (long k = k_lo; k <= k_hi; ++k) s.add(sweep[k]);
            s.add(log_pi_factorial(K));
            s.add(-(2.0 * static_cast<double>(K) + 0.5) * principal_log(x));
            return s.value();
        }
        case IdentityId::PROD_LIMIT: {
            const long K = -k_lo;
            CompensatedSum s;
            for (long k = k_lo; k <= k_hi; ++k) s.add(principal_log(guarded(sweep[k] - t, "PROD_LIMIT")));
            s.add(-log_pi_factorial(K));
            return std::exp(s.value());
        }
        default: {
            CompensatedSum s;
            for (long k = k_lo; k <= k_hi; ++k) s.add(term(id, x, t, sweep[k]));
            return s.value();
        }
    }
}

SumReport evaluate_identity(IdentityId id, const BranchSweep& sweep, Complex t, long K, const SumOptions& opt) {
    if (K < 1) throw DomainError("evaluate_identity: K must be positive");
    if (!uses_t(id)) t = 0.0;
    const long extra = opt.asymmetric ? 1 : 0;
    auto partial_at = [&](long k) { return partial_value(id, sweep, t, -k, k + extra); };

    SumReport r;
    r.id = id;
    r.x = sweep.x();
    r.t = t;
    r.K = K;
    r.asymmetric = opt.asymmetric;
    r.closed_form = closed_form(id, r.x, t);
    r.partial = partial_at(K);
    if (opt.accelerate) {
        const Complex s2 = partial_at(2 * K);
        const double a = std::log(static_cast<double>(K)) / static_cast<double>(K);
        const double b = std::log(2.0 * static_cast<double>(K)) / (2.0 * static_cast<double>(K));
        r.partial = (s2 * a - r.partial * b) / (a - b);
        r.accelerated = true;
    }
    r.abs_err = std::abs(r.partial - r.closed_form);
    r.rel_err = std::abs(r.closed_form) > 0.0 ? r.abs_err / std::abs(r.closed_form) : r.abs_err;

    for (long kp : opt.trend_points)
        if (kp < K) r.err_trend.emplace_back(kp, std::abs(partial_at(kp) - r.closed_form));
    r.err_trend.emplace_back(K, r.abs_err);

    if (id == IdentityId::PROD_HADAMARD && !opt.accelerate) {
        const Complex fund = partial_value(IdentityId::PROD_FUND, sweep, t, -K, K + extra);
        const Complex inv = partial_value(IdentityId::INV1, sweep, t, -K, K + extra);
        r.cross_relation_err = std::abs(r.partial - fund * std::exp(t * inv));
    }
    if ((id == IdentityId::CONST_SUM || id == IdentityId::PROD_LIMIT) && !positive_real(r.x))
        r.informational = true;
    return r;
}

SumReport symmetric_sum(IdentityId id, Complex x, Complex t, long K, const SumOptions& opt) {
    const BranchSweep sweep(x, opt.accelerate ? 2 * K : K);
    return evaluate_identity(id, sweep, t, K, opt);
}

SumReport fundamental_product(Complex x, Complex t, long K) {
    return symmetric_sum(IdentityId::PROD_FUND, x, t, K);
}

SumReport hadamard_product(Complex x, Complex t, long K) {
    return symmetric_sum(IdentityId::PROD_HADAMARD, x, t, K);
}

SumReport constant_sum(Complex x, long K) {
    if (K < 10) throw DomainError("constant_sum: K must be at least 10");
    return symmetric_sum(IdentityId::CONST_SUM, x, 0.0, K);
}

SumReport product_limit(Complex x, Complex t, long K) {
    return symmetric_sum(IdentityId::PROD_LIMIT, x, t, K);
}

}  // namespace branchlab
